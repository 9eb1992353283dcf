#include "evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "image_io.hpp"

namespace pdebin {

namespace fs = std::filesystem;

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

bool is_supported_image(const fs::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".pgm";
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

MetricMeans mean_of(const std::vector<MetricRow>& rows) {
  MetricMeans m;
  m.count = rows.size();
  if (rows.empty()) return m;
  for (const auto& r : rows) {
    m.fm += r.fm;
    m.fps += r.fps;
    m.psnr += r.psnr;
    m.drd += r.drd;
    m.nrm += r.nrm;
  }
  const double n = static_cast<double>(rows.size());
  m.fm /= n;
  m.fps /= n;
  m.psnr /= n;
  m.drd /= n;
  m.nrm /= n;
  return m;
}

MetricReport summarize(std::vector<MetricRow> rows, std::vector<SkippedEntry> skipped) {
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.image < b.image; });
  std::sort(skipped.begin(), skipped.end(), [](const auto& a, const auto& b) { return a.file < b.file; });
  MetricReport report;
  report.mean = mean_of(rows);

  std::map<std::string, std::vector<MetricRow>> grouped;
  for (const auto& r : rows) {
    const auto slash = r.image.find('/');
    grouped[slash == std::string::npos ? std::string{} : r.image.substr(0, slash)].push_back(r);
  }
  std::vector<MetricRow> dataset_rows;
  for (const auto& [name, members] : grouped) {
    const MetricMeans m = mean_of(members);
    report.datasets.emplace(name, m);
    dataset_rows.push_back(MetricRow{name, m.fm, m.fps, m.psnr, m.drd, m.nrm});
  }
  report.mean_of_dataset_means = mean_of(dataset_rows);
  report.mean_of_dataset_means.count = dataset_rows.size();
  report.rows = std::move(rows);
  report.skipped = std::move(skipped);
  return report;
}

namespace {

std::string strip_gt_suffix(const std::string& stem) {
  for (const char* suffix : {"_gt", "_GT", "-gt", "-GT"}) {
    const std::string s(suffix);
    if (stem.size() > s.size() && stem.compare(stem.size() - s.size(), s.size(), s) == 0)
      return stem.substr(0, stem.size() - s.size());
  }
  return stem;
}

// Relative key "dataset/stem" (or "stem") -> file path, for images directly in
// dir or one level below it.
std::map<std::string, fs::path> index_images(const fs::path& dir, bool ground_truth,
                                             std::vector<SkippedEntry>& skipped) {
  std::map<std::string, fs::path> out;
  auto add = [&](const fs::path& file, const std::string& prefix) {
    const std::string stem = file.stem().string();
    const std::string key = prefix + (ground_truth ? strip_gt_suffix(stem) : stem);
    if (!out.emplace(key, file).second)
      skipped.push_back({file.string(), "duplicate stem " + key});
  };
  std::vector<fs::directory_entry> entries(fs::directory_iterator(dir), fs::directory_iterator{});
  std::sort(entries.begin(), entries.end());
  for (const auto& e : entries) {
    if (e.is_regular_file() && is_supported_image(e.path())) {
      add(e.path(), "");
    } else if (e.is_directory()) {
      std::vector<fs::directory_entry> inner(fs::directory_iterator(e.path()), fs::directory_iterator{});
      std::sort(inner.begin(), inner.end());
      for (const auto& f : inner)
        if (f.is_regular_file() && is_supported_image(f.path()))
          add(f.path(), e.path().filename().string() + "/");
    }
  }
  return out;
}

}  // namespace

MetricReport evaluate_batch(const fs::path& pred_dir, const fs::path& gt_dir, int jobs) {
  for (const auto& d : {pred_dir, gt_dir})
    if (!fs::is_directory(d)) fail(ErrorCode::Io, "not a directory: " + d.string());

  std::vector<SkippedEntry> skipped;
  const auto preds = index_images(pred_dir, false, skipped);
  const auto gts = index_images(gt_dir, true, skipped);

  std::vector<std::pair<std::string, std::pair<fs::path, fs::path>>> pairs;
  for (const auto& [key, path] : preds) {
    auto it = gts.find(key);
    if (it == gts.end())
      skipped.push_back({path.string(), "no matching ground truth"});
    else
      pairs.push_back({key, {path, it->second}});
  }
  for (const auto& [key, path] : gts)
    if (!preds.count(key)) skipped.push_back({path.string(), "no matching prediction"});
  if (pairs.empty()) fail(ErrorCode::EmptyInput, "no prediction/ground-truth pairs found");

  std::vector<std::optional<MetricRow>> rows(pairs.size());
  std::vector<std::string> failures(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t i) {
    const auto& [key, files] = pairs[i];
    try {
      rows[i] = evaluate_pair(load_binary(files.first), load_binary(files.second), key);
    } catch (const Error& e) {
      failures[i] = e.what();
    }
  });

  std::vector<MetricRow> good;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (rows[i]) good.push_back(std::move(*rows[i]));
    else skipped.push_back({pairs[i].second.first.string(), failures[i]});
  }
  if (good.empty()) fail(ErrorCode::EmptyInput, "no pair could be evaluated");
  return summarize(std::move(good), std::move(skipped));
}

std::string report_csv(const MetricReport& report) {
  std::ostringstream out;
  out << "image,fm,fps,psnr,drd,nrm\n";
  for (const auto& r : report.rows)
    out << r.image << ',' << format_number(r.fm) << ',' << format_number(r.fps) << ','
        << format_number(r.psnr) << ',' << format_number(r.drd) << ',' << format_number(r.nrm) << '\n';
  return out.str();
}

namespace {

nlohmann::json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

nlohmann::json means_json(const MetricMeans& m) {
  return {{"fm", number(m.fm)},   {"fps", number(m.fps)}, {"psnr", number(m.psnr)},
          {"drd", number(m.drd)}, {"nrm", number(m.nrm)}, {"count", m.count}};
}

}  // namespace

std::string report_json(const MetricReport& report) {
  nlohmann::json doc;
  doc["images"] = nlohmann::json::array();
  for (const auto& r : report.rows)
    doc["images"].push_back({{"image", r.image},
                             {"fm", number(r.fm)},
                             {"fps", number(r.fps)},
                             {"psnr", number(r.psnr)},
                             {"drd", number(r.drd)},
                             {"nrm", number(r.nrm)}});
  doc["mean"] = means_json(report.mean);
  doc["datasets"] = nlohmann::json::object();
  for (const auto& [name, m] : report.datasets) doc["datasets"][name] = means_json(m);
  doc["mean_of_dataset_means"] = means_json(report.mean_of_dataset_means);
  doc["skipped"] = nlohmann::json::array();
  for (const auto& s : report.skipped) doc["skipped"].push_back({{"file", s.file}, {"reason", s.reason}});
  return doc.dump(2) + "\n";
}

void write_report(const MetricReport& report, const fs::path& csv_path, const fs::path& json_path) {
  auto write = [](const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out << text;
    if (!out) fail(ErrorCode::Io, "write failed for " + path.string());
  };
  if (!csv_path.empty()) write(csv_path, report_csv(report));
  if (!json_path.empty()) write(json_path, report_json(report));
}

}  // namespace pdebin
