#include "binarize.hpp"

#include <array>
#include <cmath>

namespace pdebin {

int histogram_bin(double v) noexcept {
  return std::clamp(static_cast<int>(std::floor(v * kHistogramBins)), 0, kHistogramBins - 1);
}

double otsu_threshold(const ScalarField& u) {
  std::array<double, kHistogramBins> hist{};
  double sum = 0.0;
  for (double v : u.values()) {
    hist[histogram_bin(v)] += 1.0;
    sum += v;
  }
  const double total = static_cast<double>(u.size());

  int occupied = 0;
  for (double c : hist) occupied += c > 0.0;
  if (occupied <= 1) return sum / total;

  double all_moment = 0.0;
  for (int i = 0; i < kHistogramBins; ++i) all_moment += hist[i] * (i + 0.5);

  // Class 0 = bins [0, t), class 1 = bins [t, 256).
  double best_var = -1.0;
  int best_t = 1;
  double w0 = 0.0;
  double m0 = 0.0;
  for (int t = 1; t < kHistogramBins; ++t) {
    w0 += hist[t - 1];
    m0 += hist[t - 1] * (t - 0.5);
    const double w1 = total - w0;
    if (w0 == 0.0 || w1 == 0.0) continue;
    const double mu0 = m0 / w0;
    const double mu1 = (all_moment - m0) / w1;
    const double between = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
    if (between > best_var) {
      best_var = between;
      best_t = t;
    }
  }
  return static_cast<double>(best_t) / kHistogramBins;
}

void validate(const SauvolaConfig& cfg) {
  if (cfg.radius < 1) fail(ErrorCode::Parameter, "Sauvola radius must be >= 1");
  if (!(cfg.kappa > 0.0)) fail(ErrorCode::Parameter, "Sauvola sensitivity must be > 0");
  if (!(cfg.range > 0.0)) fail(ErrorCode::Parameter, "Sauvola dynamic range must be > 0");
}

BinaryMap sauvola_target(const ScalarField& u, const SauvolaConfig& cfg) {
  validate(cfg);
  const int w = u.width();
  const int h = u.height();
  const int r = cfg.radius;
  const int pw = w + 2 * r;
  const int ph = h + 2 * r;

  // Integral images of the replicate-padded field and its square, with a zero
  // leading row/column.
  std::vector<double> s1(static_cast<std::size_t>(pw + 1) * (ph + 1), 0.0);
  std::vector<double> s2(s1.size(), 0.0);
  auto at = [pw](std::vector<double>& v, int x, int y) -> double& {
    return v[static_cast<std::size_t>(y) * (pw + 1) + x];
  };
  for (int y = 0; y < ph; ++y) {
    double row1 = 0.0;
    double row2 = 0.0;
    for (int x = 0; x < pw; ++x) {
      const double v = u.sample(x - r, y - r);
      row1 += v;
      row2 += v * v;
      at(s1, x + 1, y + 1) = at(s1, x + 1, y) + row1;
      at(s2, x + 1, y + 1) = at(s2, x + 1, y) + row2;
    }
  }

  const double n = static_cast<double>((2 * r + 1) * (2 * r + 1));
  const int span = 2 * r + 1;
  BinaryMap out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      auto box = [&](std::vector<double>& s) {
        return at(s, x + span, y + span) - at(s, x, y + span) - at(s, x + span, y) + at(s, x, y);
      };
      const double mean = box(s1) / n;
      const double var = std::max(0.0, box(s2) / n - mean * mean);
      const double threshold = mean * (1.0 + cfg.kappa * (std::sqrt(var) / cfg.range - 1.0));
      out.set(x, y, u.at(x, y) < threshold ? BinaryMap::kText : BinaryMap::kBackground);
    }
  return out;
}

BinaryMap threshold_at(const ScalarField& u, double threshold) {
  BinaryMap out(u.width(), u.height());
  for (int y = 0; y < u.height(); ++y)
    for (int x = 0; x < u.width(); ++x)
      out.set(x, y, u.at(x, y) < threshold ? BinaryMap::kText : BinaryMap::kBackground);
  return out;
}

BinaryMap threshold_final(const ScalarField& u, ThresholdMode mode) {
  return threshold_at(u, mode == ThresholdMode::FixedHalf ? 0.5 : otsu_threshold(u));
}

}  // namespace pdebin
