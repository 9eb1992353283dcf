#pragma once

#include "image_grid.hpp"

namespace pdebin {

inline constexpr int kHistogramBins = 256;

// Histogram bin of a sample: floor(256*v), with v = 1 folded into the top bin.
int histogram_bin(double v) noexcept;

// Otsu over a 256-bin histogram. The returned threshold is the boundary t/256
// between bin t-1 and bin t, so `u < threshold` reproduces the histogram split
// exactly; ties go to the lowest t. A field that occupies a single bin returns
// its mean (the constant itself for a constant field).
double otsu_threshold(const ScalarField& u);

struct SauvolaConfig {
  int radius = 12;
  double kappa = 0.3;
  double range = 0.5;
};

void validate(const SauvolaConfig& cfg);

// T = m*(1 + kappa*(s/R - 1)) with window mean m and population deviation s
// (replicate padding); text iff u < T.
BinaryMap sauvola_target(const ScalarField& u, const SauvolaConfig& cfg = {});

enum class ThresholdMode { FixedHalf, Otsu };

// Text iff u < threshold (0.5 or Otsu); ties map to background.
BinaryMap threshold_final(const ScalarField& u, ThresholdMode mode);

BinaryMap threshold_at(const ScalarField& u, double threshold);

}  // namespace pdebin
