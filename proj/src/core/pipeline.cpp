#include "pipeline.hpp"

#include <algorithm>

namespace pdebin {

void validate(const PipelineConfig& cfg) {
  validate(cfg.pde);
  validate(cfg.attenuation);
  validate(cfg.contrast);
  validate(cfg.edge);
  validate(cfg.target);
}

PipelineResult binarize_document(const ScalarField& input, const PipelineConfig& cfg) {
  validate(cfg);
  const auto [lo, hi] = std::minmax_element(input.values().begin(), input.values().end());
  if (*hi - *lo <= kFlatInputRange)
    return {threshold_final(input, ThresholdMode::FixedHalf), 0, true, true};

  const ScalarField attenuated = attenuate(input, cfg.attenuation);
  const ScalarField contrast = log_normalize(local_contrast(attenuated, cfg.contrast));
  const ScalarField edges = edge_map(contrast, cfg.edge);
  const BinaryMap target = sauvola_target(attenuated, cfg.target);

  EvolutionResult evolved = run_evolution(attenuated, cfg.pde, edges, target);
  return {threshold_final(evolved.field, cfg.threshold), evolved.iterations, evolved.converged, false};
}

}  // namespace pdebin
