#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "metrics.hpp"

namespace pdebin {

struct MetricMeans {
  double fm = 0.0;
  double fps = 0.0;
  double psnr = 0.0;
  double drd = 0.0;
  double nrm = 0.0;
  std::size_t count = 0;
};

struct SkippedEntry {
  std::string file;
  std::string reason;
};

struct MetricReport {
  std::vector<MetricRow> rows;                    // sorted by image name
  std::vector<SkippedEntry> skipped;
  MetricMeans mean;                               // grand per-image mean
  std::map<std::string, MetricMeans> datasets;    // per top-level subdirectory
  MetricMeans mean_of_dataset_means;
};

// Arithmetic means, accumulated in the order given.
MetricMeans mean_of(const std::vector<MetricRow>& rows);

// Builds the aggregate sections from rows; rows are sorted by name first.
// A row's dataset is the part of its name before the first '/', or "" if none.
MetricReport summarize(std::vector<MetricRow> rows, std::vector<SkippedEntry> skipped = {});

// Pairs every .png/.pgm under pred_dir (one subdirectory level allowed, one
// per dataset) with the GT file of the same relative stem under gt_dir. A GT
// stem may carry a trailing _gt, _GT, -gt or -GT. Unpaired or unreadable
// files become skipped entries. Throws EmptyInput when nothing pairs.
MetricReport evaluate_batch(const std::filesystem::path& pred_dir,
                            const std::filesystem::path& gt_dir, int jobs = 1);

// CSV columns: image,fm,fps,psnr,drd,nrm. PSNR +inf is written as "inf".
std::string report_csv(const MetricReport& report);
std::string report_json(const MetricReport& report);
void write_report(const MetricReport& report, const std::filesystem::path& csv_path,
                  const std::filesystem::path& json_path);

// Shortest round-trip decimal text; "inf" for +infinity.
std::string format_number(double v);

bool is_supported_image(const std::filesystem::path& path);

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Exceptions escaping
// fn are rethrown after all workers finish.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace pdebin
