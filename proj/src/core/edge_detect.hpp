#pragma once

#include "image_grid.hpp"

namespace pdebin {

struct EdgeConfig {
  double mix = 0.5;  // weight of the isotropic response
};

void validate(const EdgeConfig& cfg);

// Central-difference gradient magnitude, replicate boundary.
RealGrid edge_isotropic(const ScalarField& u);

// Largest one-sided difference magnitude over the 0, 45, 90 and 135 degree
// directions, taken on both sides of the pixel. Diagonal differences are
// divided by sqrt(2).
RealGrid edge_anisotropic(const ScalarField& u);

// Each response is scaled by its own maximum (left alone when the maximum is
// zero), then mixed as mix*iso + (1-mix)*aniso.
ScalarField edge_combine(const RealGrid& iso, const RealGrid& aniso, const EdgeConfig& cfg = {});

// Both detectors on u followed by edge_combine.
ScalarField edge_map(const ScalarField& u, const EdgeConfig& cfg = {});

}  // namespace pdebin
