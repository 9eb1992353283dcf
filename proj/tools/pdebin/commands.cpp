#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

namespace pdebin::cli {

namespace fs = std::filesystem;

namespace {

struct FieldDeleter {
  void operator()(pdebin_field* f) const noexcept { pdebin_field_free(f); }
};
struct BitmapDeleter {
  void operator()(pdebin_bitmap* b) const noexcept { pdebin_bitmap_free(b); }
};
struct ReportDeleter {
  void operator()(pdebin_report* r) const noexcept { pdebin_report_free(r); }
};
using FieldPtr = std::unique_ptr<pdebin_field, FieldDeleter>;
using BitmapPtr = std::unique_ptr<pdebin_bitmap, BitmapDeleter>;
using ReportPtr = std::unique_ptr<pdebin_report, ReportDeleter>;

class Failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check(pdebin_status status, const std::string& context) {
  if (status != PDEBIN_OK)
    throw Failure(context + ": " + pdebin_status_string(status) + " (" + pdebin_last_error() + ")");
}

struct Outcome {
  pdebin_run_info info{};
};

Outcome binarize_file(const std::string& input, const std::string& output, const pdebin_params& params) {
  pdebin_field* raw_in = nullptr;
  check(pdebin_field_load(input.c_str(), &raw_in), "loading " + input);
  FieldPtr in(raw_in);
  pdebin_bitmap* raw_out = nullptr;
  Outcome outcome;
  check(pdebin_binarize(in.get(), &params, &raw_out, &outcome.info), "binarizing " + input);
  BitmapPtr result(raw_out);
  check(pdebin_bitmap_save(result.get(), output.c_str()), "writing " + output);
  return outcome;
}

bool supported(const fs::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".pgm";
}

std::string short_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure("cannot create directory " + dir + ": " + ec.message());
}

void write_report(const pdebin_report* report, const std::string& base) {
  const std::string csv = base + ".csv";
  const std::string json = base + ".json";
  check(pdebin_report_write(report, csv.c_str(), json.c_str()), "writing report " + base);
}

void run_indexed(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
}

int default_jobs() {
  if (const char* env = std::getenv("PDEBIN_JOBS")) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::char_traits<char>::length(env), v);
    if (ec == std::errc{} && v >= 1) return v;
  }
  return 1;
}

}  // namespace

std::string sweep_name(const std::string& stem, double cs, double ce) {
  return stem + "_cs" + short_number(cs) + "_ce" + short_number(ce);
}

std::string report_base(const std::string& path) {
  fs::path p(path);
  if (p.extension() == ".csv" || p.extension() == ".json") p.replace_extension();
  return p.string();
}

int cmd_binarize(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.input.empty() || cfg.output.empty()) {
    err << "binarize: input and --out are required\n";
    return kUsage;
  }
  try {
    const Outcome o = binarize_file(cfg.input, cfg.output, cfg.params);
    out << "iterations: " << o.info.iterations << '\n'
        << "converged: " << (o.info.converged ? "true" : "false") << '\n';
    return kSuccess;
  } catch (const Failure& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

int cmd_sweep(const RunConfig& cfg, const std::vector<double>& cs, const std::vector<double>& ce,
              const std::string& gt_path, int jobs, std::ostream& out, std::ostream& err) {
  if (cfg.input.empty() || cfg.output.empty() || cs.empty() || ce.empty()) {
    err << "sweep: input, --out and non-empty --cs/--ce lists are required\n";
    return kUsage;
  }
  try {
    ensure_directory(cfg.output);
    const std::string stem = fs::path(cfg.input).stem().string();

    pdebin_field* raw_in = nullptr;
    check(pdebin_field_load(cfg.input.c_str(), &raw_in), "loading " + cfg.input);
    FieldPtr input(raw_in);
    BitmapPtr gt;
    if (!gt_path.empty()) {
      pdebin_bitmap* raw_gt = nullptr;
      check(pdebin_bitmap_load(gt_path.c_str(), &raw_gt), "loading " + gt_path);
      gt.reset(raw_gt);
    }

    struct Combo {
      double cs, ce;
      std::string name;
      pdebin_run_info info{};
      pdebin_metrics metrics{};
      std::string error;
    };
    std::vector<Combo> combos;
    for (double c : cs)
      for (double e : ce) combos.push_back({c, e, sweep_name(stem, c, e), {}, {}, {}});

    run_indexed(combos.size(), jobs, [&](std::size_t i) {
      Combo& combo = combos[i];
      try {
        pdebin_params params = cfg.params;
        params.source_coeff = combo.cs;
        params.edge_coeff = combo.ce;
        pdebin_bitmap* raw = nullptr;
        check(pdebin_binarize(input.get(), &params, &raw, &combo.info), "binarizing " + combo.name);
        BitmapPtr result(raw);
        const std::string path = (fs::path(cfg.output) / (combo.name + ".png")).string();
        check(pdebin_bitmap_save(result.get(), path.c_str()), "writing " + path);
        if (gt) check(pdebin_evaluate_pair(result.get(), gt.get(), &combo.metrics), "scoring " + combo.name);
      } catch (const Failure& e) {
        combo.error = e.what();
      }
    });

    bool failed = false;
    for (const auto& c : combos) {
      if (!c.error.empty()) {
        err << "error: " << c.error << '\n';
        failed = true;
        continue;
      }
      out << c.name << ": iterations " << c.info.iterations << ", converged "
          << (c.info.converged ? "true" : "false");
      if (gt) out << ", fm " << short_number(c.metrics.fm) << ", drd " << short_number(c.metrics.drd);
      out << '\n';
    }
    if (gt && !failed) {
      std::vector<const char*> names;
      std::vector<pdebin_metrics> rows;
      for (const auto& c : combos) {
        names.push_back(c.name.c_str());
        rows.push_back(c.metrics);
      }
      pdebin_report* raw = nullptr;
      check(pdebin_report_from_rows(names.data(), rows.data(), rows.size(), &raw), "building sweep report");
      ReportPtr report(raw);
      const std::string csv = (fs::path(cfg.output) / (stem + "_sweep.csv")).string();
      check(pdebin_report_write(report.get(), csv.c_str(), nullptr), "writing " + csv);
    }
    return failed ? kFailure : kSuccess;
  } catch (const Failure& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

int cmd_batch(const RunConfig& cfg, int jobs, const std::string& gt_dir, const std::string& report,
              std::ostream& out, std::ostream& err) {
  if (cfg.input.empty() || cfg.output.empty()) {
    err << "batch: input directory and --out are required\n";
    return kUsage;
  }
  try {
    if (!fs::is_directory(cfg.input)) throw Failure("not a directory: " + cfg.input);
    ensure_directory(cfg.output);
    std::vector<fs::path> inputs;
    for (const auto& e : fs::directory_iterator(cfg.input))
      if (e.is_regular_file() && supported(e.path())) inputs.push_back(e.path());
    std::sort(inputs.begin(), inputs.end());

    struct Row {
      std::string image;
      pdebin_run_info info{};
      std::string error;
    };
    std::vector<Row> rows(inputs.size());
    run_indexed(inputs.size(), jobs, [&](std::size_t i) {
      rows[i].image = inputs[i].filename().string();
      const std::string output = (fs::path(cfg.output) / inputs[i].stem()).string() + ".png";
      try {
        rows[i].info = binarize_file(inputs[i].string(), output, cfg.params).info;
      } catch (const Failure& e) {
        rows[i].error = e.what();
      }
    });

    std::ostringstream summary;
    summary << "image,status,iterations,converged,message\n";
    std::size_t failures = 0;
    for (const auto& r : rows) {
      if (r.error.empty()) {
        summary << r.image << ",ok," << r.info.iterations << ',' << (r.info.converged ? "true" : "false") << ",\n";
      } else {
        ++failures;
        std::string msg = r.error;
        std::replace(msg.begin(), msg.end(), ',', ';');
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        summary << r.image << ",failed,0,false," << msg << '\n';
        err << "error: " << r.error << '\n';
      }
    }
    {
      const fs::path summary_path = fs::path(cfg.output) / "summary.csv";
      std::ofstream f(summary_path, std::ios::binary);
      if (!f) throw Failure("cannot write " + summary_path.string());
      f << summary.str();
    }
    if (inputs.empty()) err << "warning: no .png/.pgm images in " << cfg.input << '\n';
    out << "processed " << rows.size() - failures << " of " << rows.size() << " images\n";

    int status = failures ? kFailure : kSuccess;
    if (!gt_dir.empty() && rows.size() > failures) {
      const int eval = cmd_evaluate(cfg.output, gt_dir, report.empty() ? (fs::path(cfg.output) / "report").string() : report,
                                    jobs, out, err);
      if (eval != kSuccess) status = eval;
    }
    return status;
  } catch (const Failure& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

int cmd_evaluate(const std::string& pred_dir, const std::string& gt_dir, const std::string& report,
                 int jobs, std::ostream& out, std::ostream& err) {
  if (pred_dir.empty() || gt_dir.empty() || report.empty()) {
    err << "evaluate: prediction directory, --gt and --report are required\n";
    return kUsage;
  }
  try {
    pdebin_report* raw = nullptr;
    check(pdebin_evaluate_dirs(pred_dir.c_str(), gt_dir.c_str(), jobs, &raw), "evaluating " + pred_dir);
    ReportPtr rep(raw);
    for (std::size_t i = 0; i < pdebin_report_skipped_count(rep.get()); ++i)
      err << "warning: skipped " << pdebin_report_skipped_file(rep.get(), i) << ": "
          << pdebin_report_skipped_reason(rep.get(), i) << '\n';
    write_report(rep.get(), report_base(report));
    pdebin_metrics mean{};
    check(pdebin_report_mean(rep.get(), &mean), "report mean");
    out << "images: " << pdebin_report_row_count(rep.get()) << '\n'
        << "mean fm " << short_number(mean.fm) << ", fps " << short_number(mean.fps) << ", psnr "
        << short_number(mean.psnr) << ", drd " << short_number(mean.drd) << ", nrm "
        << short_number(mean.nrm) << '\n';
    return kSuccess;
  } catch (const Failure& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

namespace {

// Flag values that override the config file when given.
struct Overrides {
  double cs = 0, ce = 0, cd = 0, alpha = 0, dt = 0, tol = 0, k_pm = 0;
  int iters = 0, k_mem = 0;
  std::string attenuation, midpoint, threshold;
  double gain = 0, bias = 0, slope = 0, edge_mix = 0;
  std::vector<CLI::Option*> given;
  std::map<std::string, std::function<void(pdebin_params&)>> apply;

  void add(CLI::App* app, bool coefficient_flags) {
    auto bind = [&](const std::string& flag, auto& var, auto setter, const std::string& help) {
      CLI::Option* opt = app->add_option(flag, var, help);
      apply[flag] = [&var, setter, opt](pdebin_params& p) {
        if (opt->count()) setter(p, var);
      };
    };
    if (coefficient_flags) {
      bind("--cs", cs, [](pdebin_params& p, double v) { p.source_coeff = v; }, "source coefficient c_s");
      bind("--ce", ce, [](pdebin_params& p, double v) { p.edge_coeff = v; }, "edge coefficient c_e");
    }
    bind("--cd", cd, [](pdebin_params& p, double v) { p.diffusion_coeff = v; }, "diffusion coefficient c_d");
    bind("--alpha", alpha, [](pdebin_params& p, double v) { p.alpha = v; }, "fractional order in (0,1]");
    bind("--dt", dt, [](pdebin_params& p, double v) { p.dt = v; }, "time step (<= 0.25)");
    bind("--iters", iters, [](pdebin_params& p, int v) { p.max_iters = v; }, "iteration cap");
    bind("--tol", tol, [](pdebin_params& p, double v) { p.tol = v; }, "mean-update stopping tolerance");
    bind("--k-pm", k_pm, [](pdebin_params& p, double v) { p.k_pm = v; }, "Perona-Malik contrast");
    bind("--k-mem", k_mem, [](pdebin_params& p, int v) { p.memory = v; }, "fractional memory depth");
    bind("--gain", gain, [](pdebin_params& p, double v) { p.gain = v; }, "linear attenuation gain");
    bind("--bias", bias, [](pdebin_params& p, double v) { p.bias = v; }, "linear attenuation bias");
    bind("--slope", slope, [](pdebin_params& p, double v) { p.slope = v; }, "nonlinear attenuation slope");
    bind("--edge-mix", edge_mix, [](pdebin_params& p, double v) { p.edge_mix = v; }, "isotropic edge weight");
    app->add_option("--attenuation", attenuation, "stain attenuation mode")
        ->check(CLI::IsMember({"linear", "nonlinear"}));
    app->add_option("--midpoint", midpoint, "nonlinear attenuation midpoint (number or auto)");
    app->add_option("--threshold", threshold, "final threshold")->check(CLI::IsMember({"fixed", "otsu"}));
  }

  void into(pdebin_params& p) const {
    for (const auto& [flag, fn] : apply) fn(p);
    if (attenuation == "linear") p.attenuation = PDEBIN_ATTENUATION_LINEAR;
    if (attenuation == "nonlinear") p.attenuation = PDEBIN_ATTENUATION_NONLINEAR;
    if (threshold == "fixed") p.threshold = PDEBIN_THRESHOLD_FIXED;
    if (threshold == "otsu") p.threshold = PDEBIN_THRESHOLD_OTSU;
    if (midpoint == "auto") {
      p.midpoint_auto = 1;
    } else if (!midpoint.empty()) {
      double v = 0;
      auto [ptr, ec] = std::from_chars(midpoint.data(), midpoint.data() + midpoint.size(), v);
      if (ec != std::errc{} || ptr != midpoint.data() + midpoint.size())
        throw CLI::ValidationError("--midpoint", "expected a number or 'auto'");
      p.midpoint_auto = 0;
      p.midpoint = v;
    }
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"PDE-based binarization of degraded document images", "pdebin"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pdebin_version()));

  std::string config_path;
  std::string input, output, gt, report;
  int jobs = default_jobs();
  std::vector<double> cs_list, ce_list;

  auto common = [&](CLI::App* sub, bool coefficient_flags) {
    auto ov = std::make_shared<Overrides>();
    sub->add_option("--config", config_path, "JSON run configuration");
    ov->add(sub, coefficient_flags);
    return ov;
  };

  CLI::App* binarize = app.add_subcommand("binarize", "binarize one image");
  auto binarize_ov = common(binarize, true);
  binarize->add_option("input", input, "input image");
  binarize->add_option("--out", output, "output PNG");

  CLI::App* sweep = app.add_subcommand("sweep", "binarize one image over a grid of c_s and c_e");
  auto sweep_ov = common(sweep, false);
  sweep->add_option("input", input, "input image");
  sweep->add_option("--cs", cs_list, "source coefficients")->delimiter(',')->required();
  sweep->add_option("--ce", ce_list, "edge coefficients")->delimiter(',')->required();
  sweep->add_option("--out", output, "output directory");
  sweep->add_option("--gt", gt, "ground truth image; enables the metric CSV");
  sweep->add_option("--jobs", jobs, "parallel workers")->check(CLI::PositiveNumber);

  CLI::App* batch = app.add_subcommand("batch", "binarize every image in a directory");
  auto batch_ov = common(batch, true);
  batch->add_option("input", input, "input directory");
  batch->add_option("--out", output, "output directory");
  batch->add_option("--gt", gt, "ground-truth directory; scores the outputs");
  batch->add_option("--report", report, "report base path (with --gt)");
  batch->add_option("--jobs", jobs, "parallel workers")->check(CLI::PositiveNumber);

  CLI::App* evaluate = app.add_subcommand("evaluate", "score predictions against ground truth");
  evaluate->add_option("pred", input, "prediction directory")->required();
  evaluate->add_option("--gt", gt, "ground-truth directory")->required();
  evaluate->add_option("--report", report, "report base path; writes .csv and .json")->required();
  evaluate->add_option("--jobs", jobs, "parallel workers")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << pdebin_version() << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  if (evaluate->parsed()) return cmd_evaluate(input, gt, report, jobs, out, err);

  RunConfig cfg;
  std::shared_ptr<Overrides> ov = binarize->parsed() ? binarize_ov : sweep->parsed() ? sweep_ov : batch_ov;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    ov->into(cfg.params);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  if (!input.empty()) cfg.input = input;
  if (!output.empty()) cfg.output = output;
  if (pdebin_params_validate(&cfg.params) != PDEBIN_OK) {
    err << "invalid parameters: " << pdebin_last_error() << '\n';
    return kUsage;
  }

  if (binarize->parsed()) return cmd_binarize(cfg, out, err);
  if (sweep->parsed()) return cmd_sweep(cfg, cs_list, ce_list, gt, jobs, out, err);
  return cmd_batch(cfg, jobs, gt, report, out, err);
}

}  // namespace pdebin::cli
