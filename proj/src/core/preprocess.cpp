#include "preprocess.hpp"

#include <cmath>
#include <numbers>

#include "binarize.hpp"

namespace pdebin {

namespace {

// Separable sliding extremum with replicate padding; O(r) per pixel.
template <typename Pick>
RealGrid window_extremum(const RealGrid& in, int radius, Pick pick) {
  const int w = in.width();
  const int h = in.height();
  RealGrid rows(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double best = in.sample(x - radius, y);
      for (int dx = -radius + 1; dx <= radius; ++dx) best = pick(best, in.sample(x + dx, y));
      rows(x, y) = best;
    }
  RealGrid out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double best = rows.sample(x, y - radius);
      for (int dy = -radius + 1; dy <= radius; ++dy) best = pick(best, rows.sample(x, y + dy));
      out(x, y) = best;
    }
  return out;
}

}  // namespace

void validate(const AttenuationConfig& cfg) {
  if (cfg.mode == AttenuationMode::Linear && !(cfg.gain > 0.0))
    fail(ErrorCode::Parameter, "linear attenuation gain must be > 0");
  if (cfg.mode == AttenuationMode::Nonlinear) {
    if (!(cfg.slope > 0.0)) fail(ErrorCode::Parameter, "nonlinear attenuation slope must be > 0");
    if (cfg.midpoint && !(*cfg.midpoint >= 0.0 && *cfg.midpoint <= 1.0))
      fail(ErrorCode::Parameter, "attenuation midpoint must lie in [0,1]");
  }
}

void validate(const ContrastConfig& cfg) {
  if (cfg.radius < 1) fail(ErrorCode::Parameter, "contrast window radius must be >= 1");
  if (!(cfg.epsilon > 0.0)) fail(ErrorCode::Parameter, "contrast stabilizer must be > 0");
}

ScalarField attenuate_linear(const ScalarField& u, double gain, double bias) {
  if (!(gain > 0.0)) fail(ErrorCode::Parameter, "linear attenuation gain must be > 0");
  if (!std::isfinite(bias)) fail(ErrorCode::Parameter, "linear attenuation bias must be finite");
  RealGrid out(u.width(), u.height());
  auto src = u.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = gain * src[i] + bias;
  return ScalarField::clamped(out);
}

ScalarField attenuate_nonlinear(const ScalarField& u, double slope, std::optional<double> midpoint) {
  if (!(slope > 0.0)) fail(ErrorCode::Parameter, "nonlinear attenuation slope must be > 0");
  const double m = midpoint ? *midpoint : otsu_threshold(u);
  RealGrid out(u.width(), u.height());
  auto src = u.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = 1.0 / (1.0 + std::exp(-slope * (src[i] - m)));
  return ScalarField::clamped(out);
}

ScalarField attenuate(const ScalarField& u, const AttenuationConfig& cfg) {
  validate(cfg);
  return cfg.mode == AttenuationMode::Linear ? attenuate_linear(u, cfg.gain, cfg.bias)
                                             : attenuate_nonlinear(u, cfg.slope, cfg.midpoint);
}

ScalarField local_contrast(const ScalarField& u, const ContrastConfig& cfg) {
  validate(cfg);
  const RealGrid hi = window_extremum(u.grid(), cfg.radius, [](double a, double b) { return std::max(a, b); });
  const RealGrid lo = window_extremum(u.grid(), cfg.radius, [](double a, double b) { return std::min(a, b); });
  RealGrid out(u.width(), u.height());
  auto dst = out.values();
  auto mx = hi.values();
  auto mn = lo.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = (mx[i] - mn[i]) / (mx[i] + mn[i] + cfg.epsilon);
  return ScalarField::clamped(out);
}

ScalarField log_normalize(const ScalarField& contrast) {
  RealGrid out(contrast.width(), contrast.height());
  auto src = contrast.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = std::log1p(src[i]) / std::numbers::ln2;
  return ScalarField::clamped(out);
}

}  // namespace pdebin
