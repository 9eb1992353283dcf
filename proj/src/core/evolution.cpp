#include "evolution.hpp"

#include <cmath>

#include "fractional.hpp"
#include "stencil.hpp"

namespace pdebin {

void validate(const PdeParams& p) {
  auto non_negative = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) fail(ErrorCode::Parameter, std::string(name) + " must be >= 0");
  };
  non_negative(p.source_coeff, "source coefficient");
  non_negative(p.edge_coeff, "edge coefficient");
  non_negative(p.diffusion_coeff, "diffusion coefficient");
  if (!(p.dt > 0.0 && p.dt <= 0.25)) fail(ErrorCode::Parameter, "time step must lie in (0, 0.25]");
  if (p.max_iters < 1) fail(ErrorCode::Parameter, "iteration cap must be >= 1");
  if (!(p.tol > 0.0)) fail(ErrorCode::Parameter, "tolerance must be > 0");
  if (!(p.k_pm > 0.0)) fail(ErrorCode::Parameter, "diffusion contrast must be > 0");
  if (!(p.alpha > 0.0 && p.alpha <= 1.0)) fail(ErrorCode::Parameter, "fractional order must lie in (0, 1]");
  if (p.memory < 1) fail(ErrorCode::Parameter, "memory depth must be >= 1");
}

RealGrid term_source(const ScalarField& u, const BinaryMap& target) {
  require_same_shape(u, target, "term_source");
  RealGrid out(u.width(), u.height());
  auto src = u.values();
  auto bits = target.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = static_cast<double>(bits[i]) - src[i];
  return out;
}

RealGrid term_edge(const ScalarField& u, const ScalarField& edges) {
  require_same_shape(u, edges, "term_edge");
  auto dx = [&u](int x, int y) { return u.sample(x, y) - u.sample(x - 1, y); };
  auto dy = [&u](int x, int y) { return u.sample(x, y) - u.sample(x, y - 1); };
  return detail::shock_term(edges.grid(), dx, dy);
}

RealGrid term_diffusion(const RealGrid& u, double k_pm) {
  if (!(k_pm > 0.0)) fail(ErrorCode::Parameter, "diffusion contrast must be > 0");
  auto dx = [&u](int x, int y) { return u.sample(x, y) - u.sample(x - 1, y); };
  auto dy = [&u](int x, int y) { return u.sample(x, y) - u.sample(x, y - 1); };
  return detail::diffusion_term(u.width(), u.height(), k_pm, dx, dy);
}

namespace detail {

RealGrid combined_rate(const TermFields& terms, const PdeParams& p, const RealGrid& shape) {
  require_same_shape(shape, terms.source, "source term");
  require_same_shape(shape, terms.edge, "edge term");
  require_same_shape(shape, terms.diffusion, "diffusion term");
  RealGrid rate(shape.width(), shape.height());
  auto s = terms.source.values();
  auto e = terms.edge.values();
  auto d = terms.diffusion.values();
  auto dst = rate.values();
  for (std::size_t i = 0; i < dst.size(); ++i)
    dst[i] = p.source_coeff * s[i] + p.edge_coeff * e[i] + p.diffusion_coeff * d[i];
  return rate;
}

}  // namespace detail

ScalarField step_integer(const ScalarField& u, const TermFields& terms, const PdeParams& p) {
  const RealGrid rate = detail::combined_rate(terms, p, u);
  RealGrid next(u.width(), u.height());
  auto src = u.values();
  auto r = rate.values();
  auto dst = next.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[i] + p.dt * r[i];
  return ScalarField::clamped(next);
}

namespace {

double mean_abs_change(const ScalarField& a, const ScalarField& b) {
  auto x = a.values();
  auto y = b.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += std::abs(x[i] - y[i]);
  return sum / static_cast<double>(x.size());
}

}  // namespace

EvolutionResult run_evolution(const ScalarField& input, const PdeParams& p,
                              const ScalarField& edges, const BinaryMap& target) {
  validate(p);
  require_same_shape(input, edges, "run_evolution edge map");
  require_same_shape(input, target, "run_evolution target");

  const bool fractional = p.alpha < 1.0;
  EvolutionHistory history(p.memory);
  history.push(input);

  EvolutionResult result;
  result.field = input;
  for (int iter = 0; iter < p.max_iters; ++iter) {
    const ScalarField& u = result.field;
    TermFields terms{term_source(u, target),
                     fractional ? term_edge_frac(u, edges, p.alpha, p.memory) : term_edge(u, edges),
                     fractional ? term_diffusion_frac(u, p.k_pm, p.alpha, p.memory)
                                : term_diffusion(u, p.k_pm)};
    ScalarField next = fractional ? step_fractional(history, terms, p) : step_integer(u, terms, p);
    const double change = mean_abs_change(next, u);
    result.updates.push_back(change);
    result.iterations = iter + 1;
    result.field = std::move(next);
    if (fractional) history.push(result.field);
    if (change < p.tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace pdebin
