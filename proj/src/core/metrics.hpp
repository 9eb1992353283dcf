#pragma once

#include <cstdint>
#include <string>

#include "image_grid.hpp"

namespace pdebin {

// Positive class is text (bit 0).
struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts confusion_counts(const BinaryMap& pred, const BinaryMap& gt);

// Percent. Ratios with a zero denominator count as 0; FM = 0 when P + R = 0.
double f_measure(const ConfusionCounts& c);

// F-measure with recall measured on the Zhang-Suen skeleton of the GT text.
double pseudo_f_measure(const BinaryMap& pred, const BinaryMap& gt);

// 10 log10(1 / MSE) on {0,1} intensities; +infinity for identical maps.
double psnr(const BinaryMap& pred, const BinaryMap& gt);

// Mean of the false-negative and false-positive rates, as a fraction.
double nrm(const ConfusionCounts& c);

// Distance-reciprocal distortion with a 5x5 inverse-distance kernel,
// normalized by the number of non-uniform 8x8 GT blocks. Throws
// DegenerateGroundTruth when every block is uniform but pixels differ.
double drd(const BinaryMap& pred, const BinaryMap& gt);

struct MetricRow {
  std::string image;
  double fm = 0.0;
  double fps = 0.0;
  double psnr = 0.0;
  double drd = 0.0;
  double nrm = 0.0;
};

MetricRow evaluate_pair(const BinaryMap& pred, const BinaryMap& gt, std::string image = {});

}  // namespace pdebin
