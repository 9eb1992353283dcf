/*
 * pdebin: PDE-based binarization of degraded document images.
 *
 * C interface to the engine. All objects are opaque handles owned by the
 * caller and released with the matching *_free function. Every fallible call
 * returns a pdebin_status; on failure pdebin_last_error() describes the cause
 * for the calling thread. Functions are reentrant and handles may be read
 * concurrently from several threads.
 */
#ifndef PDEBIN_PDEBIN_H
#define PDEBIN_PDEBIN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PDEBIN_BUILDING)
#    define PDEBIN_API __declspec(dllexport)
#  else
#    define PDEBIN_API __declspec(dllimport)
#  endif
#else
#  define PDEBIN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pdebin_status {
  PDEBIN_OK = 0,
  PDEBIN_ERR_IO = 1,
  PDEBIN_ERR_FORMAT = 2,
  PDEBIN_ERR_DIMENSION = 3,
  PDEBIN_ERR_PARAMETER = 4,
  PDEBIN_ERR_DOMAIN = 5,
  PDEBIN_ERR_STATE = 6,
  PDEBIN_ERR_DEGENERATE_GT = 7,
  PDEBIN_ERR_EMPTY_INPUT = 8,
  PDEBIN_ERR_NULL_ARGUMENT = 9,
  PDEBIN_ERR_INTERNAL = 10
} pdebin_status;

PDEBIN_API const char* pdebin_version(void);
PDEBIN_API const char* pdebin_status_string(pdebin_status status);
/* Message of the last failed call on this thread; "" if none. */
PDEBIN_API const char* pdebin_last_error(void);

/* ---- images ---------------------------------------------------------- */

/* Gray field with samples in [0,1]. */
typedef struct pdebin_field pdebin_field;
/* Binary map: 0 = text, 1 = background. */
typedef struct pdebin_bitmap pdebin_bitmap;

PDEBIN_API pdebin_status pdebin_field_load(const char* path, pdebin_field** out);
PDEBIN_API pdebin_status pdebin_field_create(int width, int height, const double* samples,
                                             pdebin_field** out);
PDEBIN_API pdebin_status pdebin_field_save(const pdebin_field* field, const char* path);
PDEBIN_API void pdebin_field_free(pdebin_field* field);
PDEBIN_API int pdebin_field_width(const pdebin_field* field);
PDEBIN_API int pdebin_field_height(const pdebin_field* field);
/* Row-major samples, valid until the field is freed. */
PDEBIN_API const double* pdebin_field_data(const pdebin_field* field);

/* Loads any supported image; samples < 0.5 become text. */
PDEBIN_API pdebin_status pdebin_bitmap_load(const char* path, pdebin_bitmap** out);
PDEBIN_API pdebin_status pdebin_bitmap_create(int width, int height, const uint8_t* bits,
                                              pdebin_bitmap** out);
/* 8-bit gray: 0 -> 0, 1 -> 255. PGM for a .pgm extension, PNG otherwise. */
PDEBIN_API pdebin_status pdebin_bitmap_save(const pdebin_bitmap* map, const char* path);
PDEBIN_API void pdebin_bitmap_free(pdebin_bitmap* map);
PDEBIN_API int pdebin_bitmap_width(const pdebin_bitmap* map);
PDEBIN_API int pdebin_bitmap_height(const pdebin_bitmap* map);
PDEBIN_API const uint8_t* pdebin_bitmap_data(const pdebin_bitmap* map);

/* ---- binarization ---------------------------------------------------- */

typedef enum pdebin_attenuation { PDEBIN_ATTENUATION_LINEAR = 0, PDEBIN_ATTENUATION_NONLINEAR = 1 } pdebin_attenuation;
typedef enum pdebin_threshold { PDEBIN_THRESHOLD_FIXED = 0, PDEBIN_THRESHOLD_OTSU = 1 } pdebin_threshold;

typedef struct pdebin_params {
  /* evolution */
  double source_coeff;    /* c_s */
  double edge_coeff;      /* c_e */
  double diffusion_coeff; /* c_d */
  double dt;
  int max_iters;
  double tol;
  double k_pm;
  double alpha;           /* 1 = integer order */
  int memory;             /* GL depth (time) and taps (space) */
  /* stain attenuation */
  pdebin_attenuation attenuation;
  double gain;
  double bias;
  double slope;
  int midpoint_auto;      /* nonzero: Otsu midpoint, `midpoint` ignored */
  double midpoint;
  /* local contrast */
  int contrast_radius;
  double contrast_epsilon;
  /* edge map */
  double edge_mix;
  /* provisional target */
  int target_radius;
  double target_kappa;
  double target_range;
  /* output */
  pdebin_threshold threshold;
} pdebin_params;

PDEBIN_API void pdebin_params_default(pdebin_params* params);
PDEBIN_API pdebin_status pdebin_params_validate(const pdebin_params* params);

typedef struct pdebin_run_info {
  int iterations;
  int converged;
  int flat_input;
} pdebin_run_info;

/* Full pipeline. `info` may be NULL. */
PDEBIN_API pdebin_status pdebin_binarize(const pdebin_field* input, const pdebin_params* params,
                                         pdebin_bitmap** out, pdebin_run_info* info);

/* ---- metrics --------------------------------------------------------- */

typedef struct pdebin_metrics {
  double fm;       /* percent */
  double fps;      /* percent */
  double psnr;     /* dB, +inf for identical maps */
  double drd;
  double nrm;      /* fraction */
} pdebin_metrics;

PDEBIN_API pdebin_status pdebin_evaluate_pair(const pdebin_bitmap* pred, const pdebin_bitmap* gt,
                                              pdebin_metrics* out);

typedef struct pdebin_report pdebin_report;

/* Pairs prediction and ground-truth images by file stem; see README. */
PDEBIN_API pdebin_status pdebin_evaluate_dirs(const char* pred_dir, const char* gt_dir, int jobs,
                                              pdebin_report** out);
/* Builds a report from named rows (e.g. sweep results). */
PDEBIN_API pdebin_status pdebin_report_from_rows(const char* const* names,
                                                 const pdebin_metrics* rows, size_t count,
                                                 pdebin_report** out);
PDEBIN_API void pdebin_report_free(pdebin_report* report);
PDEBIN_API size_t pdebin_report_row_count(const pdebin_report* report);
PDEBIN_API const char* pdebin_report_row_name(const pdebin_report* report, size_t index);
PDEBIN_API pdebin_status pdebin_report_row(const pdebin_report* report, size_t index,
                                           pdebin_metrics* out);
PDEBIN_API pdebin_status pdebin_report_mean(const pdebin_report* report, pdebin_metrics* out);
PDEBIN_API size_t pdebin_report_skipped_count(const pdebin_report* report);
PDEBIN_API const char* pdebin_report_skipped_file(const pdebin_report* report, size_t index);
PDEBIN_API const char* pdebin_report_skipped_reason(const pdebin_report* report, size_t index);
/* Either path may be NULL to skip that format. */
PDEBIN_API pdebin_status pdebin_report_write(const pdebin_report* report, const char* csv_path,
                                             const char* json_path);

#ifdef __cplusplus
}
#endif

#endif /* PDEBIN_PDEBIN_H */
