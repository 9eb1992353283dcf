#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "binarize.hpp"
#include "edge_detect.hpp"
#include "evolution.hpp"
#include "metrics.hpp"
#include "synthetic.hpp"

namespace pdebin {
namespace {

PdeParams only(double cs, double ce, double cd, double dt = 0.25) {
  PdeParams p;
  p.source_coeff = cs;
  p.edge_coeff = ce;
  p.diffusion_coeff = cd;
  p.dt = dt;
  return p;
}

TermFields zero_terms(int w, int h) { return {RealGrid(w, h), RealGrid(w, h), RealGrid(w, h)}; }

double mean(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

TEST(Terms, SourcePullsTowardTarget) {
  const ScalarField u(2, 1, 0.3);
  const BinaryMap b(2, 1, std::vector<std::uint8_t>{0, 1});
  const auto s = term_source(u, b);
  EXPECT_DOUBLE_EQ(s(0, 0), -0.3);
  EXPECT_DOUBLE_EQ(s(1, 0), 0.7);
}

TEST(Terms, ShockOnRamp) {
  const ScalarField u(4, 1, std::vector<double>{0.0, 0.25, 0.75, 1.0});
  const auto e = term_edge(u, ScalarField(4, 1, 1.0));
  EXPECT_DOUBLE_EQ(e(0, 0), -0.125);
  EXPECT_DOUBLE_EQ(e(1, 0), -0.375);
  EXPECT_DOUBLE_EQ(e(2, 0), 0.375);
  EXPECT_DOUBLE_EQ(e(3, 0), 0.125);
}

TEST(Terms, ShockScalesWithEdgeMap) {
  const ScalarField u(4, 1, std::vector<double>{0.0, 0.25, 0.75, 1.0});
  const auto e = term_edge(u, ScalarField(4, 1, std::vector<double>{0.0, 0.5, 0.0, 1.0}));
  EXPECT_DOUBLE_EQ(e(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(e(1, 0), -0.1875);
  EXPECT_DOUBLE_EQ(e(2, 0), 0.0);
}

TEST(Terms, ShockVanishesOnFlatField) {
  const auto e = term_edge(ScalarField(5, 5, 0.4), ScalarField(5, 5, 1.0));
  for (double v : e.values()) EXPECT_EQ(v, 0.0);
}

TEST(Terms, DiffusionOfSpike) {
  const RealGrid u(3, 1, std::vector<double>{0.0, 1.0, 0.0});
  const auto d = term_diffusion(u, 1.0);
  EXPECT_DOUBLE_EQ(d(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(d(1, 0), -1.0);
  EXPECT_DOUBLE_EQ(d(2, 0), 0.5);
}

TEST(Terms, DiffusionLargeContrastIsLaplacian) {
  const auto u = testing::random_grid(9, 7, 3, 0.0, 1.0);
  const auto d = term_diffusion(u, 1e9);
  for (int y = 0; y < 7; ++y)
    for (int x = 0; x < 9; ++x) {
      const double lap = u.sample(x + 1, y) + u.sample(x - 1, y) + u.sample(x, y + 1) +
                         u.sample(x, y - 1) - 4 * u(x, y);
      EXPECT_NEAR(d(x, y), lap, 1e-12);
    }
}

TEST(Terms, DiffusionConservesMass) {
  const auto u = testing::random_grid(11, 13, 8, 0.0, 1.0);
  const auto d = term_diffusion(u, 0.1);
  EXPECT_NEAR(std::accumulate(d.values().begin(), d.values().end(), 0.0), 0.0, 1e-12);
}

TEST(Terms, DiffusionRejectsBadContrast) {
  EXPECT_THROW(term_diffusion(RealGrid(2, 2), 0.0), Error);
}

TEST(Terms, ShapeMismatch) {
  try {
    term_source(ScalarField(2, 2), BinaryMap(3, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Dimension);
  }
}

TEST(Step, CombinesTerms) {
  auto t = zero_terms(1, 1);
  t.source(0, 0) = 1.0;
  EXPECT_DOUBLE_EQ(step_integer(ScalarField(1, 1, 0.5), t, only(1, 0, 0)).at(0, 0), 0.75);
  t.source(0, 0) = 0.5;
  EXPECT_DOUBLE_EQ(step_integer(ScalarField(1, 1, 0.5), t, only(2.5, 0, 0, 0.2)).at(0, 0), 0.75);
  t.source(0, 0) = 1.0;
  t.edge(0, 0) = -0.5;
  t.diffusion(0, 0) = 2.0;
  // 0.5 + 0.25 * (2*1 + 1*(-0.5) + 0.5*2) = 1.125 -> clamped
  EXPECT_DOUBLE_EQ(step_integer(ScalarField(1, 1, 0.5), t, only(2, 1, 0.5)).at(0, 0), 1.0);
  t.source(0, 0) = -1.0;
  EXPECT_DOUBLE_EQ(step_integer(ScalarField(1, 1, 0.5), t, only(1, 0, 0)).at(0, 0), 0.25);
}

TEST(Step, ClampsToUnitInterval) {
  auto t = zero_terms(2, 1);
  t.source(0, 0) = -100;
  t.source(1, 0) = 100;
  const auto u = step_integer(ScalarField(2, 1, 0.5), t, only(1, 0, 0));
  EXPECT_EQ(u.at(0, 0), 0.0);
  EXPECT_EQ(u.at(1, 0), 1.0);
}

TEST(Step, PureDiffusionConservesMeanAndRange) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto u = testing::random_field(16, 12, seed);
    const double m0 = mean(u.values());
    const auto [lo, hi] = std::minmax_element(u.values().begin(), u.values().end());
    const double min0 = *lo, max0 = *hi;
    const auto p = only(0, 0, 1, 0.2);
    for (int i = 0; i < 10; ++i) {
      const TermFields t{RealGrid(16, 12), RealGrid(16, 12), term_diffusion(u.grid(), 0.1)};
      u = step_integer(u, t, p);
    }
    EXPECT_NEAR(mean(u.values()), m0, 1e-12);
    for (double v : u.values()) {
      EXPECT_GE(v, min0 - 1e-12);
      EXPECT_LE(v, max0 + 1e-12);
    }
  }
}

TEST(Step, JacobiUpdateIsMirrorSymmetric) {
  // A sequential sweep would favour one scan direction.
  const auto u = testing::random_field(10, 6, 21);
  ScalarField mirrored(10, 6), edges(10, 6, 0.7);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 10; ++x) mirrored.set(9 - x, y, u.at(x, y));
  const BinaryMap target = sauvola_target(u, {2, 0.3, 0.5});
  BinaryMap target_m(10, 6);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 10; ++x) target_m.set(9 - x, y, target.at(x, y));
  const auto p = only(1, 1, 0.5, 0.2);
  const auto a = step_integer(u, {term_source(u, target), term_edge(u, edges), term_diffusion(u.grid(), 0.1)}, p);
  const auto b = step_integer(mirrored, {term_source(mirrored, target_m), term_edge(mirrored, edges),
                                         term_diffusion(mirrored.grid(), 0.1)}, p);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 10; ++x) EXPECT_NEAR(a.at(x, y), b.at(9 - x, y), 1e-12);
}

TEST(Step, ShockSharpensSmoothStep) {
  const int n = 24;
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 / (1.0 + std::exp(-(i - 11.5) / 3.0));
  ScalarField u(n, 1, v);
  const ScalarField edges(n, 1, 1.0);
  auto max_jump = [&](const ScalarField& f) {
    double m = 0;
    for (int i = 1; i < n; ++i) m = std::max(m, f.at(i, 0) - f.at(i - 1, 0));
    return m;
  };
  const double before = max_jump(u);
  auto step = [&] { u = step_integer(u, {RealGrid(n, 1), term_edge(u, edges), RealGrid(n, 1)}, only(0, 1, 0, 0.2)); };
  step();
  EXPECT_GT(max_jump(u), before);
  for (int i = 0; i < 9; ++i) step();
  EXPECT_GT(max_jump(u), before * 1.5);
}

TEST(Step, SourceOnlyContractsGeometrically) {
  auto u = testing::random_field(8, 8, 4);
  const auto target = testing::random_binary(8, 8, 5);
  auto distance = [&](const ScalarField& f) {
    double d = 0;
    for (std::size_t i = 0; i < f.values().size(); ++i) d = std::max(d, std::abs(f.values()[i] - target.values()[i]));
    return d;
  };
  const auto p = only(1, 0, 0, 0.2);
  double d = distance(u);
  for (int i = 0; i < 15; ++i) {
    u = step_integer(u, {term_source(u, target), RealGrid(8, 8), RealGrid(8, 8)}, p);
    const double next = distance(u);
    EXPECT_NEAR(next, 0.8 * d, 1e-12);
    d = next;
  }
}

TEST(Run, StopsWhenUpdateIsSmall) {
  const ScalarField u(6, 6, 1.0);
  const BinaryMap b(6, 6);  // all background: already a fixed point
  PdeParams p;
  const auto r = run_evolution(u, p, ScalarField(6, 6), b);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_EQ(r.field, u);
}

TEST(Run, HonoursIterationCap) {
  const auto u = testing::random_field(12, 12, 2);
  PdeParams p;
  p.max_iters = 3;
  p.tol = 1e-300;
  const auto r = run_evolution(u, p, ScalarField(12, 12, 0.5), sauvola_target(u));
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 3);
  EXPECT_EQ(r.updates.size(), 3u);
}

TEST(Run, UpdatesDecreaseUnderSourceOnly) {
  const auto u = testing::random_field(12, 12, 6);
  auto p = only(1, 0, 0, 0.2);
  p.max_iters = 50;
  p.tol = 1e-6;
  const auto r = run_evolution(u, p, ScalarField(12, 12), sauvola_target(u));
  EXPECT_TRUE(r.converged);
  for (std::size_t i = 1; i < r.updates.size(); ++i) EXPECT_LT(r.updates[i], r.updates[i - 1]);
  EXPECT_LT(r.updates.back(), 1e-6);
}

TEST(Run, RejectsInvalidParameters) {
  const ScalarField u(3, 3);
  const BinaryMap b(3, 3);
  PdeParams p;
  p.dt = 0.3;
  EXPECT_THROW(run_evolution(u, p, u, b), Error);
  p = {};
  p.alpha = 0.0;
  EXPECT_THROW(run_evolution(u, p, u, b), Error);
  p = {};
  p.source_coeff = -1;
  EXPECT_THROW(run_evolution(u, p, u, b), Error);
  p = {};
  p.max_iters = 0;
  EXPECT_THROW(run_evolution(u, p, u, b), Error);
}

TEST(Run, RecoversNoisyStrokes) {
  // 32x32: two horizontal and two vertical bars, dimmed and noisy.
  BinaryMap clean(32, 32);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x) {
      const bool bar = (y >= 8 && y < 11) || (y >= 20 && y < 23) || (x >= 6 && x < 9) || (x >= 24 && x < 27);
      if (bar) clean.set(x, y, BinaryMap::kText);
    }
  testing::SplitMix64 rng(12);
  ScalarField noisy(32, 32);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x) {
      const double base = clean.at(x, y) ? 0.8 : 0.25;
      noisy.set(x, y, std::clamp(base + 0.08 * rng.gaussian(), 0.0, 1.0));
    }
  PdeParams p;
  p.max_iters = 40;
  const auto r = run_evolution(noisy, p, edge_map(noisy), sauvola_target(noisy, {6, 0.3, 0.5}));
  const auto out = threshold_final(r.field, ThresholdMode::FixedHalf);
  EXPECT_GE(f_measure(confusion_counts(out, clean)), 90.0);
}

}  // namespace
}  // namespace pdebin
