#include "pdebin/pdebin.h"

#include <exception>
#include <new>
#include <string>

#include "../core/evaluation.hpp"
#include "../core/image_io.hpp"
#include "../core/pipeline.hpp"

struct pdebin_field {
  pdebin::ScalarField value;
};

struct pdebin_bitmap {
  pdebin::BinaryMap value;
};

struct pdebin_report {
  pdebin::MetricReport value;
};

namespace {

thread_local std::string last_error;

pdebin_status to_status(pdebin::ErrorCode code) {
  using pdebin::ErrorCode;
  switch (code) {
    case ErrorCode::Io: return PDEBIN_ERR_IO;
    case ErrorCode::Format: return PDEBIN_ERR_FORMAT;
    case ErrorCode::Dimension: return PDEBIN_ERR_DIMENSION;
    case ErrorCode::Parameter: return PDEBIN_ERR_PARAMETER;
    case ErrorCode::Domain: return PDEBIN_ERR_DOMAIN;
    case ErrorCode::State: return PDEBIN_ERR_STATE;
    case ErrorCode::DegenerateGroundTruth: return PDEBIN_ERR_DEGENERATE_GT;
    case ErrorCode::EmptyInput: return PDEBIN_ERR_EMPTY_INPUT;
  }
  return PDEBIN_ERR_INTERNAL;
}

// Runs fn, translating exceptions into status codes and the thread's message.
template <typename Fn>
pdebin_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    last_error.clear();
    return PDEBIN_OK;
  } catch (const pdebin::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return PDEBIN_ERR_INTERNAL;
}

pdebin_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return PDEBIN_ERR_NULL_ARGUMENT;
}

pdebin::PipelineConfig to_config(const pdebin_params& p) {
  pdebin::PipelineConfig cfg;
  cfg.pde.source_coeff = p.source_coeff;
  cfg.pde.edge_coeff = p.edge_coeff;
  cfg.pde.diffusion_coeff = p.diffusion_coeff;
  cfg.pde.dt = p.dt;
  cfg.pde.max_iters = p.max_iters;
  cfg.pde.tol = p.tol;
  cfg.pde.k_pm = p.k_pm;
  cfg.pde.alpha = p.alpha;
  cfg.pde.memory = p.memory;
  switch (p.attenuation) {
    case PDEBIN_ATTENUATION_LINEAR: cfg.attenuation.mode = pdebin::AttenuationMode::Linear; break;
    case PDEBIN_ATTENUATION_NONLINEAR: cfg.attenuation.mode = pdebin::AttenuationMode::Nonlinear; break;
    default: pdebin::fail(pdebin::ErrorCode::Parameter, "unknown attenuation mode");
  }
  cfg.attenuation.gain = p.gain;
  cfg.attenuation.bias = p.bias;
  cfg.attenuation.slope = p.slope;
  if (!p.midpoint_auto) cfg.attenuation.midpoint = p.midpoint;
  cfg.contrast.radius = p.contrast_radius;
  cfg.contrast.epsilon = p.contrast_epsilon;
  cfg.edge.mix = p.edge_mix;
  cfg.target.radius = p.target_radius;
  cfg.target.kappa = p.target_kappa;
  cfg.target.range = p.target_range;
  switch (p.threshold) {
    case PDEBIN_THRESHOLD_FIXED: cfg.threshold = pdebin::ThresholdMode::FixedHalf; break;
    case PDEBIN_THRESHOLD_OTSU: cfg.threshold = pdebin::ThresholdMode::Otsu; break;
    default: pdebin::fail(pdebin::ErrorCode::Parameter, "unknown threshold mode");
  }
  return cfg;
}

pdebin_metrics to_metrics(const pdebin::MetricRow& r) { return {r.fm, r.fps, r.psnr, r.drd, r.nrm}; }

}  // namespace

extern "C" {

const char* pdebin_version(void) { return PDEBIN_VERSION; }

const char* pdebin_status_string(pdebin_status status) {
  switch (status) {
    case PDEBIN_OK: return "ok";
    case PDEBIN_ERR_IO: return "I/O error";
    case PDEBIN_ERR_FORMAT: return "format error";
    case PDEBIN_ERR_DIMENSION: return "dimension error";
    case PDEBIN_ERR_PARAMETER: return "parameter error";
    case PDEBIN_ERR_DOMAIN: return "domain error";
    case PDEBIN_ERR_STATE: return "state error";
    case PDEBIN_ERR_DEGENERATE_GT: return "degenerate ground truth";
    case PDEBIN_ERR_EMPTY_INPUT: return "empty input";
    case PDEBIN_ERR_NULL_ARGUMENT: return "null argument";
    case PDEBIN_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* pdebin_last_error(void) { return last_error.c_str(); }

pdebin_status pdebin_field_load(const char* path, pdebin_field** out) {
  if (!path || !out) return null_argument("path/out");
  return guarded([&] { *out = new pdebin_field{pdebin::load_image(path)}; });
}

pdebin_status pdebin_field_create(int width, int height, const double* samples, pdebin_field** out) {
  if (!samples || !out) return null_argument("samples/out");
  return guarded([&] {
    if (width < 1 || height < 1) pdebin::fail(pdebin::ErrorCode::Dimension, "dimensions must be >= 1");
    std::vector<double> v(samples, samples + static_cast<std::size_t>(width) * height);
    *out = new pdebin_field{pdebin::ScalarField(width, height, std::move(v))};
  });
}

pdebin_status pdebin_field_save(const pdebin_field* field, const char* path) {
  if (!field || !path) return null_argument("field/path");
  return guarded([&] { pdebin::save_image(field->value, path); });
}

void pdebin_field_free(pdebin_field* field) { delete field; }
int pdebin_field_width(const pdebin_field* field) { return field ? field->value.width() : 0; }
int pdebin_field_height(const pdebin_field* field) { return field ? field->value.height() : 0; }
const double* pdebin_field_data(const pdebin_field* field) {
  return field ? field->value.values().data() : nullptr;
}

pdebin_status pdebin_bitmap_load(const char* path, pdebin_bitmap** out) {
  if (!path || !out) return null_argument("path/out");
  return guarded([&] { *out = new pdebin_bitmap{pdebin::load_binary(path)}; });
}

pdebin_status pdebin_bitmap_create(int width, int height, const uint8_t* bits, pdebin_bitmap** out) {
  if (!bits || !out) return null_argument("bits/out");
  return guarded([&] {
    if (width < 1 || height < 1) pdebin::fail(pdebin::ErrorCode::Dimension, "dimensions must be >= 1");
    std::vector<std::uint8_t> v(bits, bits + static_cast<std::size_t>(width) * height);
    *out = new pdebin_bitmap{pdebin::BinaryMap(width, height, std::move(v))};
  });
}

pdebin_status pdebin_bitmap_save(const pdebin_bitmap* map, const char* path) {
  if (!map || !path) return null_argument("map/path");
  return guarded([&] { pdebin::save_image(map->value, path); });
}

void pdebin_bitmap_free(pdebin_bitmap* map) { delete map; }
int pdebin_bitmap_width(const pdebin_bitmap* map) { return map ? map->value.width() : 0; }
int pdebin_bitmap_height(const pdebin_bitmap* map) { return map ? map->value.height() : 0; }
const uint8_t* pdebin_bitmap_data(const pdebin_bitmap* map) {
  return map ? map->value.values().data() : nullptr;
}

void pdebin_params_default(pdebin_params* params) {
  if (!params) return;
  const pdebin::PipelineConfig d;
  *params = pdebin_params{};
  params->source_coeff = d.pde.source_coeff;
  params->edge_coeff = d.pde.edge_coeff;
  params->diffusion_coeff = d.pde.diffusion_coeff;
  params->dt = d.pde.dt;
  params->max_iters = d.pde.max_iters;
  params->tol = d.pde.tol;
  params->k_pm = d.pde.k_pm;
  params->alpha = d.pde.alpha;
  params->memory = d.pde.memory;
  params->attenuation = d.attenuation.mode == pdebin::AttenuationMode::Linear
                            ? PDEBIN_ATTENUATION_LINEAR
                            : PDEBIN_ATTENUATION_NONLINEAR;
  params->gain = d.attenuation.gain;
  params->bias = d.attenuation.bias;
  params->slope = d.attenuation.slope;
  params->midpoint_auto = !d.attenuation.midpoint.has_value();
  params->midpoint = d.attenuation.midpoint.value_or(0.5);
  params->contrast_radius = d.contrast.radius;
  params->contrast_epsilon = d.contrast.epsilon;
  params->edge_mix = d.edge.mix;
  params->target_radius = d.target.radius;
  params->target_kappa = d.target.kappa;
  params->target_range = d.target.range;
  params->threshold = d.threshold == pdebin::ThresholdMode::FixedHalf ? PDEBIN_THRESHOLD_FIXED
                                                                      : PDEBIN_THRESHOLD_OTSU;
}

pdebin_status pdebin_params_validate(const pdebin_params* params) {
  if (!params) return null_argument("params");
  return guarded([&] { pdebin::validate(to_config(*params)); });
}

pdebin_status pdebin_binarize(const pdebin_field* input, const pdebin_params* params,
                              pdebin_bitmap** out, pdebin_run_info* info) {
  if (!input || !params || !out) return null_argument("input/params/out");
  return guarded([&] {
    auto result = pdebin::binarize_document(input->value, to_config(*params));
    if (info) *info = {result.iterations, result.converged ? 1 : 0, result.flat_input ? 1 : 0};
    *out = new pdebin_bitmap{std::move(result.binary)};
  });
}

pdebin_status pdebin_evaluate_pair(const pdebin_bitmap* pred, const pdebin_bitmap* gt,
                                   pdebin_metrics* out) {
  if (!pred || !gt || !out) return null_argument("pred/gt/out");
  return guarded([&] { *out = to_metrics(pdebin::evaluate_pair(pred->value, gt->value)); });
}

pdebin_status pdebin_evaluate_dirs(const char* pred_dir, const char* gt_dir, int jobs,
                                   pdebin_report** out) {
  if (!pred_dir || !gt_dir || !out) return null_argument("pred_dir/gt_dir/out");
  return guarded([&] { *out = new pdebin_report{pdebin::evaluate_batch(pred_dir, gt_dir, jobs)}; });
}

pdebin_status pdebin_report_from_rows(const char* const* names, const pdebin_metrics* rows,
                                      size_t count, pdebin_report** out) {
  if ((count && (!names || !rows)) || !out) return null_argument("names/rows/out");
  return guarded([&] {
    std::vector<pdebin::MetricRow> v;
    v.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (!names[i]) pdebin::fail(pdebin::ErrorCode::Parameter, "row name must not be null");
      v.push_back({names[i], rows[i].fm, rows[i].fps, rows[i].psnr, rows[i].drd, rows[i].nrm});
    }
    *out = new pdebin_report{pdebin::summarize(std::move(v))};
  });
}

void pdebin_report_free(pdebin_report* report) { delete report; }

size_t pdebin_report_row_count(const pdebin_report* report) {
  return report ? report->value.rows.size() : 0;
}

const char* pdebin_report_row_name(const pdebin_report* report, size_t index) {
  if (!report || index >= report->value.rows.size()) return nullptr;
  return report->value.rows[index].image.c_str();
}

pdebin_status pdebin_report_row(const pdebin_report* report, size_t index, pdebin_metrics* out) {
  if (!report || !out) return null_argument("report/out");
  return guarded([&] {
    if (index >= report->value.rows.size()) pdebin::fail(pdebin::ErrorCode::Parameter, "row index out of range");
    *out = to_metrics(report->value.rows[index]);
  });
}

pdebin_status pdebin_report_mean(const pdebin_report* report, pdebin_metrics* out) {
  if (!report || !out) return null_argument("report/out");
  const auto& m = report->value.mean;
  *out = {m.fm, m.fps, m.psnr, m.drd, m.nrm};
  last_error.clear();
  return PDEBIN_OK;
}

size_t pdebin_report_skipped_count(const pdebin_report* report) {
  return report ? report->value.skipped.size() : 0;
}

const char* pdebin_report_skipped_file(const pdebin_report* report, size_t index) {
  if (!report || index >= report->value.skipped.size()) return nullptr;
  return report->value.skipped[index].file.c_str();
}

const char* pdebin_report_skipped_reason(const pdebin_report* report, size_t index) {
  if (!report || index >= report->value.skipped.size()) return nullptr;
  return report->value.skipped[index].reason.c_str();
}

pdebin_status pdebin_report_write(const pdebin_report* report, const char* csv_path,
                                  const char* json_path) {
  if (!report) return null_argument("report");
  return guarded([&] {
    pdebin::write_report(report->value, csv_path ? csv_path : "", json_path ? json_path : "");
  });
}

}  // extern "C"
