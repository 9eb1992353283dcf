#include "fractional.hpp"

#include <cmath>

#include "stencil.hpp"

namespace pdebin {

namespace detail {
RealGrid combined_rate(const TermFields& terms, const PdeParams& p, const RealGrid& shape);
}

namespace {

void check_order(double alpha, int taps) {
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorCode::Parameter, "fractional order must lie in (0, 1]");
  if (taps < 1) fail(ErrorCode::Parameter, "GL tap count must be >= 1");
}

// Backward GL difference along one axis, evaluated at any integer position.
struct GlDifference {
  const RealGrid& u;
  const std::vector<double>& w;
  int step_x;
  int step_y;

  double operator()(int x, int y) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const int shift = static_cast<int>(k);
      acc += w[k] * u.sample(x - shift * step_x, y - shift * step_y);
    }
    return acc;
  }
};

}  // namespace

GlCoefficients gl_coefficients(double alpha, int taps) {
  check_order(alpha, taps);
  GlCoefficients c{alpha, std::vector<double>(static_cast<std::size_t>(taps) + 1)};
  c.weights[0] = 1.0;
  for (int k = 1; k <= taps; ++k)
    c.weights[k] = (1.0 - (alpha + 1.0) / k) * c.weights[k - 1];
  return c;
}

RealGrid frac_gradient(const RealGrid& u, double alpha, int taps, Direction dir) {
  const auto gl = gl_coefficients(alpha, taps);
  int sx = 0;
  int sy = 0;
  switch (dir) {
    case Direction::XPlus: sx = 1; break;
    case Direction::XMinus: sx = -1; break;
    case Direction::YPlus: sy = 1; break;
    case Direction::YMinus: sy = -1; break;
  }
  const GlDifference d{u, gl.weights, sx, sy};
  RealGrid out(u.width(), u.height());
  for (int y = 0; y < u.height(); ++y)
    for (int x = 0; x < u.width(); ++x) out(x, y) = d(x, y);
  return out;
}

RealGrid term_edge_frac(const ScalarField& u, const ScalarField& edges, double alpha, int taps) {
  require_same_shape(u, edges, "term_edge_frac");
  const auto gl = gl_coefficients(alpha, taps);
  return detail::shock_term(edges.grid(), GlDifference{u, gl.weights, 1, 0},
                            GlDifference{u, gl.weights, 0, 1});
}

RealGrid term_diffusion_frac(const RealGrid& u, double k_pm, double alpha, int taps) {
  if (!(k_pm > 0.0)) fail(ErrorCode::Parameter, "diffusion contrast must be > 0");
  const auto gl = gl_coefficients(alpha, taps);
  return detail::diffusion_term(u.width(), u.height(), k_pm, GlDifference{u, gl.weights, 1, 0},
                                GlDifference{u, gl.weights, 0, 1});
}

EvolutionHistory::EvolutionHistory(int capacity) : capacity_(capacity) {
  if (capacity < 1) fail(ErrorCode::Parameter, "history capacity must be >= 1");
}

void EvolutionHistory::push(ScalarField u) {
  if (!entries_.empty()) require_same_shape(entries_.front(), u, "evolution history");
  entries_.push_front(std::move(u));
  if (entries_.size() > static_cast<std::size_t>(capacity_)) entries_.pop_back();
}

ScalarField step_fractional(const EvolutionHistory& history, const TermFields& terms,
                            const PdeParams& p) {
  if (history.empty()) fail(ErrorCode::State, "fractional step needs a non-empty history");
  validate(p);
  const ScalarField& current = history.latest();
  const RealGrid rate = detail::combined_rate(terms, p, current);
  const auto gl = gl_coefficients(p.alpha, history.capacity());
  const double scale = std::pow(p.dt, p.alpha);

  RealGrid next(current.width(), current.height());
  auto r = rate.values();
  auto dst = next.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = scale * r[i];
  for (std::size_t lag = 0; lag < history.size(); ++lag) {
    const double w = gl.weights[lag + 1];
    auto past = history[lag].values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= w * past[i];
  }
  return ScalarField::clamped(next);
}

}  // namespace pdebin
