#include "edge_detect.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace pdebin {

void validate(const EdgeConfig& cfg) {
  if (!(cfg.mix >= 0.0 && cfg.mix <= 1.0)) fail(ErrorCode::Parameter, "edge mix weight must lie in [0,1]");
}

RealGrid edge_isotropic(const ScalarField& u) {
  RealGrid out(u.width(), u.height());
  for (int y = 0; y < u.height(); ++y)
    for (int x = 0; x < u.width(); ++x) {
      const double dx = (u.sample(x + 1, y) - u.sample(x - 1, y)) / 2.0;
      const double dy = (u.sample(x, y + 1) - u.sample(x, y - 1)) / 2.0;
      out(x, y) = std::sqrt(dx * dx + dy * dy);
    }
  return out;
}

RealGrid edge_anisotropic(const ScalarField& u) {
  struct Direction {
    int dx, dy;
    double scale;
  };
  constexpr double kDiag = 1.0 / std::numbers::sqrt2;
  constexpr std::array<Direction, 4> kDirections{{{1, 0, 1.0}, {1, -1, kDiag}, {0, 1, 1.0}, {1, 1, kDiag}}};

  RealGrid out(u.width(), u.height());
  for (int y = 0; y < u.height(); ++y)
    for (int x = 0; x < u.width(); ++x) {
      const double c = u.at(x, y);
      double best = 0.0;
      for (const auto& d : kDirections) {
        const double ahead = std::abs(u.sample(x + d.dx, y + d.dy) - c) * d.scale;
        const double behind = std::abs(c - u.sample(x - d.dx, y - d.dy)) * d.scale;
        best = std::max({best, ahead, behind});
      }
      out(x, y) = best;
    }
  return out;
}

ScalarField edge_combine(const RealGrid& iso, const RealGrid& aniso, const EdgeConfig& cfg) {
  validate(cfg);
  require_same_shape(iso, aniso, "edge_combine");
  auto peak = [](const RealGrid& g) {
    double m = 0.0;
    for (double v : g.values()) m = std::max(m, v);
    return m > 0.0 ? m : 1.0;
  };
  const double iso_max = peak(iso);
  const double aniso_max = peak(aniso);
  RealGrid out(iso.width(), iso.height());
  auto a = iso.values();
  auto b = aniso.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < dst.size(); ++i)
    dst[i] = cfg.mix * (a[i] / iso_max) + (1.0 - cfg.mix) * (b[i] / aniso_max);
  return ScalarField::clamped(out);
}

ScalarField edge_map(const ScalarField& u, const EdgeConfig& cfg) {
  return edge_combine(edge_isotropic(u), edge_anisotropic(u), cfg);
}

}  // namespace pdebin
