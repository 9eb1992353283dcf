#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace pdebin::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kUsage = 2 };

int cmd_binarize(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int cmd_sweep(const RunConfig& cfg, const std::vector<double>& cs, const std::vector<double>& ce,
              const std::string& gt_path, int jobs, std::ostream& out, std::ostream& err);

// Binarizes every .png/.pgm in cfg.input into cfg.output and writes
// summary.csv there. With gt_dir set, the outputs are also scored into report.
int cmd_batch(const RunConfig& cfg, int jobs, const std::string& gt_dir, const std::string& report,
              std::ostream& out, std::ostream& err);

int cmd_evaluate(const std::string& pred_dir, const std::string& gt_dir, const std::string& report,
                 int jobs, std::ostream& out, std::ostream& err);

// Full command line, argv[0] included.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// <stem>_cs<value>_ce<value>
std::string sweep_name(const std::string& stem, double cs, double ce);

// Report base path: a trailing .csv or .json is dropped.
std::string report_base(const std::string& path);

}  // namespace pdebin::cli
