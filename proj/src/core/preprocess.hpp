#pragma once

#include <optional>

#include "image_grid.hpp"

namespace pdebin {

enum class AttenuationMode { Linear, Nonlinear };

struct AttenuationConfig {
  AttenuationMode mode = AttenuationMode::Nonlinear;
  double gain = 1.0;                 // linear: v = gain*u + bias
  double bias = 0.0;
  double slope = 10.0;               // nonlinear: logistic steepness
  std::optional<double> midpoint;    // nonlinear: empty = Otsu threshold of the input
};

struct ContrastConfig {
  int radius = 3;
  double epsilon = 1e-6;
};

// v = clamp(gain*u + bias, 0, 1)
ScalarField attenuate_linear(const ScalarField& u, double gain, double bias);

// v = 1 / (1 + exp(-slope*(u - midpoint))); midpoint defaults to Otsu.
ScalarField attenuate_nonlinear(const ScalarField& u, double slope,
                                std::optional<double> midpoint = std::nullopt);

ScalarField attenuate(const ScalarField& u, const AttenuationConfig& cfg);

// (max - min) / (max + min + eps) over the (2r+1)^2 replicate-padded window.
ScalarField local_contrast(const ScalarField& u, const ContrastConfig& cfg = {});

// log(1 + C) / log(2); rejects samples outside [0,1].
ScalarField log_normalize(const ScalarField& contrast);

void validate(const AttenuationConfig& cfg);
void validate(const ContrastConfig& cfg);

}  // namespace pdebin
