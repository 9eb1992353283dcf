#include <gtest/gtest.h>

#include <cmath>

#include "binarize.hpp"
#include "fractional.hpp"
#include "synthetic.hpp"

namespace pdebin {
namespace {

TEST(GlCoefficients, KnownValues) {
  const auto a = gl_coefficients(0.5, 3);
  ASSERT_EQ(a.weights.size(), 4u);
  EXPECT_DOUBLE_EQ(a.weights[0], 1.0);
  EXPECT_DOUBLE_EQ(a.weights[1], -0.5);
  EXPECT_DOUBLE_EQ(a.weights[2], -0.125);
  EXPECT_DOUBLE_EQ(a.weights[3], -0.0625);

  const auto b = gl_coefficients(0.8, 2);
  EXPECT_DOUBLE_EQ(b.weights[1], -0.8);
  EXPECT_NEAR(b.weights[2], -0.08, 1e-15);
}

TEST(GlCoefficients, FirstOrderIsBackwardDifference) {
  const auto w = gl_coefficients(1.0, 6).weights;
  EXPECT_EQ(w[0], 1.0);
  EXPECT_EQ(w[1], -1.0);
  for (std::size_t k = 2; k < w.size(); ++k) EXPECT_EQ(w[k], 0.0);
}

TEST(GlCoefficients, SignDecayAndPartialSums) {
  for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const auto w = gl_coefficients(alpha, 64).weights;
    double sum = 1.0, product = 1.0;
    for (int k = 1; k <= 64; ++k) {
      EXPECT_LT(w[k], 0.0);
      if (k > 1) EXPECT_LT(std::abs(w[k]), std::abs(w[k - 1]));
      sum += w[k];
      product *= 1.0 - alpha / k;
      EXPECT_GT(sum, 0.0);
      EXPECT_NEAR(sum, product, 1e-13) << "alpha " << alpha << " k " << k;
    }
  }
}

TEST(GlCoefficients, RejectsBadArguments) {
  EXPECT_THROW(gl_coefficients(0.0, 3), Error);
  EXPECT_THROW(gl_coefficients(1.5, 3), Error);
  EXPECT_THROW(gl_coefficients(0.5, 0), Error);
}

TEST(FracGradient, ImpulseResponse) {
  RealGrid u(8, 1);
  u(2, 0) = 1.0;
  const auto g = frac_gradient(u, 0.5, 3, Direction::XPlus);
  EXPECT_DOUBLE_EQ(g(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(g(2, 0), 1.0);
  EXPECT_DOUBLE_EQ(g(3, 0), -0.5);
  EXPECT_DOUBLE_EQ(g(4, 0), -0.125);
  EXPECT_DOUBLE_EQ(g(5, 0), -0.0625);
  EXPECT_DOUBLE_EQ(g(6, 0), 0.0);

  const auto m = frac_gradient(u, 0.5, 3, Direction::XMinus);
  EXPECT_DOUBLE_EQ(m(2, 0), 1.0);
  EXPECT_DOUBLE_EQ(m(1, 0), -0.5);
  EXPECT_DOUBLE_EQ(m(0, 0), -0.125);
}

TEST(FracGradient, VerticalMatchesTranspose) {
  const auto u = testing::random_grid(5, 7, 9, 0.0, 1.0);
  RealGrid t(7, 5);
  for (int y = 0; y < 7; ++y)
    for (int x = 0; x < 5; ++x) t(y, x) = u(x, y);
  const auto gy = frac_gradient(u, 0.6, 4, Direction::YPlus);
  const auto gx = frac_gradient(t, 0.6, 4, Direction::XPlus);
  for (int y = 0; y < 7; ++y)
    for (int x = 0; x < 5; ++x) EXPECT_DOUBLE_EQ(gy(x, y), gx(y, x));
}

TEST(FracGradient, ConstantFieldGivesWeightSum) {
  const auto g = frac_gradient(RealGrid(6, 6, 1.0), 0.5, 3, Direction::YMinus);
  for (double v : g.values()) EXPECT_DOUBLE_EQ(v, 0.3125);
}

TEST(FracGradient, Linear) {
  const auto u = testing::random_grid(9, 9, 1, -1.0, 1.0);
  const auto v = testing::random_grid(9, 9, 2, -1.0, 1.0);
  RealGrid mix(9, 9);
  for (std::size_t i = 0; i < mix.values().size(); ++i) mix.values()[i] = 2.0 * u.values()[i] - 3.0 * v.values()[i];
  for (auto dir : {Direction::XPlus, Direction::XMinus, Direction::YPlus, Direction::YMinus}) {
    const auto gu = frac_gradient(u, 0.4, 5, dir);
    const auto gv = frac_gradient(v, 0.4, 5, dir);
    const auto gm = frac_gradient(mix, 0.4, 5, dir);
    for (std::size_t i = 0; i < gm.values().size(); ++i)
      EXPECT_NEAR(gm.values()[i], 2.0 * gu.values()[i] - 3.0 * gv.values()[i], 1e-12);
  }
}

TEST(FracTerms, FirstOrderIsBitIdenticalToIntegerTerms) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto u = testing::random_field(14, 9, seed);
    const auto e = testing::random_field(14, 9, seed + 100);
    EXPECT_EQ(term_edge_frac(u, e, 1.0, 8), term_edge(u, e));
    EXPECT_EQ(term_diffusion_frac(u.grid(), 0.1, 1.0, 8), term_diffusion(u.grid(), 0.1));
  }
}

TEST(FracTerms, DiffusionOfSpike) {
  const RealGrid u(3, 1, std::vector<double>{0.0, 1.0, 0.0});
  EXPECT_NEAR(term_diffusion_frac(u, 1.0, 0.5, 2)(1, 0), -0.9, 1e-12);
}

TEST(FracTerms, ConstantFieldIsStationary) {
  for (double alpha : {0.3, 0.7}) {
    const ScalarField u(7, 5, 0.6);
    const auto d = term_diffusion_frac(u.grid(), 0.1, alpha, 8);
    const auto e = term_edge_frac(u, ScalarField(7, 5, 1.0), alpha, 8);
    for (double v : d.values()) EXPECT_EQ(v, 0.0);
    for (double v : e.values()) EXPECT_EQ(v, 0.0);
  }
}

TEST(History, KeepsMostRecentFirstUpToCapacity) {
  EvolutionHistory h(2);
  EXPECT_TRUE(h.empty());
  h.push(ScalarField(1, 1, 0.1));
  h.push(ScalarField(1, 1, 0.2));
  h.push(ScalarField(1, 1, 0.3));
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h.latest().at(0, 0), 0.3);
  EXPECT_EQ(h[1].at(0, 0), 0.2);
  EXPECT_THROW(h.push(ScalarField(2, 1)), Error);
  EXPECT_THROW(EvolutionHistory(0), Error);
}

PdeParams half_order(int memory) {
  PdeParams p;
  p.alpha = 0.5;
  p.dt = 0.25;  // dt^alpha = 0.5
  p.memory = memory;
  return p;
}

TEST(FracStep, MemoryTerm) {
  const TermFields zero{RealGrid(1, 1), RealGrid(1, 1), RealGrid(1, 1)};
  EvolutionHistory h(2);
  h.push(ScalarField(1, 1, 0.5));
  EXPECT_DOUBLE_EQ(step_fractional(h, zero, half_order(2)).at(0, 0), 0.25);
  h.push(ScalarField(1, 1, 0.25));
  // 0.5 * 0.25 + 0.125 * 0.5
  EXPECT_DOUBLE_EQ(step_fractional(h, zero, half_order(2)).at(0, 0), 0.1875);
}

TEST(FracStep, RateScaledByFractionalStep) {
  TermFields t{RealGrid(1, 1, 0.5), RealGrid(1, 1), RealGrid(1, 1)};
  EvolutionHistory h(1);
  h.push(ScalarField(1, 1, 0.5));
  EXPECT_DOUBLE_EQ(step_fractional(h, t, half_order(1)).at(0, 0), 0.5);
  t.source(0, 0) = 10.0;
  EXPECT_EQ(step_fractional(h, t, half_order(1)).at(0, 0), 1.0);
}

TEST(FracStep, FirstOrderMatchesIntegerStep) {
  const auto u = testing::random_field(6, 6, 3);
  const TermFields t{testing::random_grid(6, 6, 4, -1, 1), testing::random_grid(6, 6, 5, -1, 1),
                     testing::random_grid(6, 6, 6, -1, 1)};
  PdeParams p;
  EvolutionHistory h(p.memory);
  h.push(u);
  const auto a = step_fractional(h, t, p);
  const auto b = step_integer(u, t, p);
  for (std::size_t i = 0; i < a.values().size(); ++i) EXPECT_NEAR(a.values()[i], b.values()[i], 1e-15);
}

TEST(FracStep, EmptyHistoryIsStateError) {
  EvolutionHistory h(3);
  try {
    step_fractional(h, {RealGrid(1, 1), RealGrid(1, 1), RealGrid(1, 1)}, half_order(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::State);
  }
}

TEST(FracRun, StaysInRangeAndStops) {
  const auto u = testing::random_field(16, 16, 8);
  PdeParams p;
  p.alpha = 0.7;
  p.max_iters = 15;
  const auto r = run_evolution(u, p, ScalarField(16, 16, 0.5), sauvola_target(u, {3, 0.3, 0.5}));
  EXPECT_LE(r.iterations, 15);
  EXPECT_EQ(r.updates.size(), static_cast<std::size_t>(r.iterations));
  for (double v : r.field.values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

}  // namespace
}  // namespace pdebin
