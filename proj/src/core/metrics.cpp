#include "metrics.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "thinning.hpp"

namespace pdebin {

namespace {

double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

double harmonic_percent(double precision, double recall) {
  const double s = precision + recall;
  return s > 0.0 ? 100.0 * 2.0 * precision * recall / s : 0.0;
}

using DrdKernel = std::array<std::array<double, 5>, 5>;

DrdKernel make_drd_kernel() {
  DrdKernel k{};
  double total = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i == 2 && j == 2) continue;
      k[i][j] = 1.0 / std::hypot(i - 2.0, j - 2.0);
      total += k[i][j];
    }
  for (auto& row : k)
    for (double& v : row) v /= total;
  return k;
}

std::size_t non_uniform_blocks(const BinaryMap& gt) {
  constexpr int kBlock = 8;
  std::size_t count = 0;
  for (int by = 0; by < gt.height(); by += kBlock)
    for (int bx = 0; bx < gt.width(); bx += kBlock) {
      bool text = false;
      bool background = false;
      for (int y = by; y < std::min(by + kBlock, gt.height()); ++y)
        for (int x = bx; x < std::min(bx + kBlock, gt.width()); ++x)
          (gt.at(x, y) == BinaryMap::kText ? text : background) = true;
      count += text && background;
    }
  return count;
}

}  // namespace

ConfusionCounts confusion_counts(const BinaryMap& pred, const BinaryMap& gt) {
  require_same_shape(pred, gt, "confusion_counts");
  ConfusionCounts c;
  auto p = pred.values();
  auto g = gt.values();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const bool pt = p[i] == BinaryMap::kText;
    const bool gtext = g[i] == BinaryMap::kText;
    if (pt && gtext) ++c.tp;
    else if (pt) ++c.fp;
    else if (gtext) ++c.fn;
    else ++c.tn;
  }
  return c;
}

double f_measure(const ConfusionCounts& c) {
  const double precision = ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fp));
  const double recall = ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fn));
  return harmonic_percent(precision, recall);
}

double pseudo_f_measure(const BinaryMap& pred, const BinaryMap& gt) {
  const ConfusionCounts c = confusion_counts(pred, gt);
  const auto skeleton = zhang_suen_skeleton(gt);
  std::uint64_t skeleton_px = 0;
  std::uint64_t recovered = 0;
  auto s = skeleton.values();
  auto p = pred.values();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s[i]) continue;
    ++skeleton_px;
    recovered += p[i] == BinaryMap::kText;
  }
  const double precision = ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fp));
  const double pseudo_recall = ratio(static_cast<double>(recovered), static_cast<double>(skeleton_px));
  return harmonic_percent(precision, pseudo_recall);
}

double psnr(const BinaryMap& pred, const BinaryMap& gt) {
  const ConfusionCounts c = confusion_counts(pred, gt);
  const auto differing = c.fp + c.fn;
  if (differing == 0) return std::numeric_limits<double>::infinity();
  const double mse = static_cast<double>(differing) / static_cast<double>(pred.size());
  return 10.0 * std::log10(1.0 / mse);
}

double nrm(const ConfusionCounts& c) {
  const double fn_rate = ratio(static_cast<double>(c.fn), static_cast<double>(c.fn + c.tp));
  const double fp_rate = ratio(static_cast<double>(c.fp), static_cast<double>(c.fp + c.tn));
  return (fn_rate + fp_rate) / 2.0;
}

double drd(const BinaryMap& pred, const BinaryMap& gt) {
  require_same_shape(pred, gt, "drd");
  static const DrdKernel kernel = make_drd_kernel();
  double distortion = 0.0;
  std::size_t flipped = 0;
  for (int y = 0; y < gt.height(); ++y)
    for (int x = 0; x < gt.width(); ++x) {
      const int b = pred.at(x, y);
      if (b == gt.at(x, y)) continue;
      ++flipped;
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
          distortion += kernel[i][j] * std::abs(gt.sample(x + j - 2, y + i - 2) - b);
    }
  if (flipped == 0) return 0.0;
  const std::size_t nubn = non_uniform_blocks(gt);
  if (nubn == 0)
    fail(ErrorCode::DegenerateGroundTruth,
         "DRD undefined: ground truth has no non-uniform 8x8 block but prediction differs");
  return distortion / static_cast<double>(nubn);
}

MetricRow evaluate_pair(const BinaryMap& pred, const BinaryMap& gt, std::string image) {
  const ConfusionCounts c = confusion_counts(pred, gt);
  return MetricRow{std::move(image), f_measure(c), pseudo_f_measure(pred, gt), psnr(pred, gt),
                   drd(pred, gt), nrm(c)};
}

}  // namespace pdebin
