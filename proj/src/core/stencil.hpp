#pragma once

// Shared shock/diffusion stencils. Both are written in terms of a backward
// one-sided difference d(x, y) along one axis; the integer model plugs in
// u(p) - u(p-1), the fractional model the Grunwald-Letnikov sum. Forward
// differences are the backward difference evaluated one pixel ahead, so the
// two instantiations agree bit-for-bit when the GL weights are (1, -1, 0...).

#include <cmath>

#include "image_grid.hpp"

namespace pdebin::detail {

inline double sign(double v) noexcept { return (v > 0.0) - (v < 0.0); }

inline double perona_malik(double s, double k) noexcept {
  const double r = s / k;
  return 1.0 / (1.0 + r * r);
}

// U_e = -E * sign(laplacian) * |grad|
template <typename DiffX, typename DiffY>
RealGrid shock_term(const RealGrid& edges, DiffX dx, DiffY dy) {
  RealGrid out(edges.width(), edges.height());
  for (int y = 0; y < edges.height(); ++y)
    for (int x = 0; x < edges.width(); ++x) {
      const double bx = dx(x, y);
      const double fx = dx(x + 1, y);
      const double by = dy(x, y);
      const double fy = dy(x, y + 1);
      const double gx = (fx + bx) / 2.0;
      const double gy = (fy + by) / 2.0;
      const double laplacian = (fx - bx) + (fy - by);
      out(x, y) = -edges(x, y) * sign(laplacian) * std::sqrt(gx * gx + gy * gy);
    }
  return out;
}

// Divergence of g(|d|) d over the four pixel faces.
template <typename DiffX, typename DiffY>
RealGrid diffusion_term(int width, int height, double k_pm, DiffX dx, DiffY dy) {
  auto flux = [k_pm](double d) { return perona_malik(std::abs(d), k_pm) * d; };
  RealGrid out(width, height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      const double east = flux(dx(x + 1, y));
      const double west = flux(dx(x, y));
      const double south = flux(dy(x, y + 1));
      const double north = flux(dy(x, y));
      out(x, y) = east - west + south - north;
    }
  return out;
}

}  // namespace pdebin::detail
