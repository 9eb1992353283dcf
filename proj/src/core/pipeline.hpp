#pragma once

#include "binarize.hpp"
#include "edge_detect.hpp"
#include "evolution.hpp"
#include "preprocess.hpp"

namespace pdebin {

struct PipelineConfig {
  PdeParams pde;
  AttenuationConfig attenuation;
  ContrastConfig contrast;
  EdgeConfig edge;
  SauvolaConfig target;
  ThresholdMode threshold = ThresholdMode::FixedHalf;
};

void validate(const PipelineConfig& cfg);

struct PipelineResult {
  BinaryMap binary;
  int iterations = 0;
  bool converged = false;
  bool flat_input = false;  // evolution skipped, input thresholded at 0.5
};

// Inputs whose range spans no more than one 8-bit level carry no local
// structure for the target or edge map to work with.
inline constexpr double kFlatInputRange = 1.0 / 255.0;

// attenuate -> local contrast -> log normalize -> edge map; Sauvola target on
// the attenuated field; evolve; final threshold.
PipelineResult binarize_document(const ScalarField& input, const PipelineConfig& cfg);

}  // namespace pdebin
