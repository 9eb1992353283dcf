#include "run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pdebin::cli {

using nlohmann::json;

RunConfig::RunConfig() { pdebin_params_default(&params); }

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  for (const auto& item : obj.items())
    if (!known.count(item.key())) throw ConfigError("unknown config key '" + where + item.key() + "'");
}

template <typename T>
void read(const json& obj, const char* key, T& dst, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    dst = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + where + key + "' has the wrong type");
  }
}

const json& section(const json& doc, const char* key) {
  static const json empty = json::object();
  if (!doc.contains(key)) return empty;
  const json& s = doc.at(key);
  if (!s.is_object()) throw ConfigError(std::string("config key '") + key + "' must be an object");
  return s;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(doc,
                 {"c_s", "c_e", "c_d", "dt", "max_iters", "tol", "k_pm", "alpha", "k_mem", "attenuation",
                  "contrast", "edge", "target", "threshold", "input", "output"},
                 "");

  RunConfig cfg;
  auto& p = cfg.params;
  read(doc, "c_s", p.source_coeff, "");
  read(doc, "c_e", p.edge_coeff, "");
  read(doc, "c_d", p.diffusion_coeff, "");
  read(doc, "dt", p.dt, "");
  read(doc, "max_iters", p.max_iters, "");
  read(doc, "tol", p.tol, "");
  read(doc, "k_pm", p.k_pm, "");
  read(doc, "alpha", p.alpha, "");
  read(doc, "k_mem", p.memory, "");
  read(doc, "input", cfg.input, "");
  read(doc, "output", cfg.output, "");

  if (doc.contains("threshold")) {
    std::string mode;
    read(doc, "threshold", mode, "");
    if (mode == "fixed") p.threshold = PDEBIN_THRESHOLD_FIXED;
    else if (mode == "otsu") p.threshold = PDEBIN_THRESHOLD_OTSU;
    else throw ConfigError("threshold must be \"fixed\" or \"otsu\"");
  }

  const json& att = section(doc, "attenuation");
  reject_unknown(att, {"mode", "gain", "bias", "slope", "midpoint"}, "attenuation.");
  if (att.contains("mode")) {
    std::string mode;
    read(att, "mode", mode, "attenuation.");
    if (mode == "linear") p.attenuation = PDEBIN_ATTENUATION_LINEAR;
    else if (mode == "nonlinear") p.attenuation = PDEBIN_ATTENUATION_NONLINEAR;
    else throw ConfigError("attenuation.mode must be \"linear\" or \"nonlinear\"");
  }
  read(att, "gain", p.gain, "attenuation.");
  read(att, "bias", p.bias, "attenuation.");
  read(att, "slope", p.slope, "attenuation.");
  if (att.contains("midpoint")) {
    const json& m = att.at("midpoint");
    if (m.is_string() && m.get<std::string>() == "auto") {
      p.midpoint_auto = 1;
    } else if (m.is_number()) {
      p.midpoint_auto = 0;
      p.midpoint = m.get<double>();
    } else {
      throw ConfigError("attenuation.midpoint must be a number or \"auto\"");
    }
  }

  const json& con = section(doc, "contrast");
  reject_unknown(con, {"radius", "epsilon"}, "contrast.");
  read(con, "radius", p.contrast_radius, "contrast.");
  read(con, "epsilon", p.contrast_epsilon, "contrast.");

  const json& edge = section(doc, "edge");
  reject_unknown(edge, {"mix"}, "edge.");
  read(edge, "mix", p.edge_mix, "edge.");

  const json& target = section(doc, "target");
  reject_unknown(target, {"radius", "kappa", "range"}, "target.");
  read(target, "radius", p.target_radius, "target.");
  read(target, "kappa", p.target_kappa, "target.");
  read(target, "range", p.target_range, "target.");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize_config(const RunConfig& cfg) {
  const auto& p = cfg.params;
  json doc = {
      {"c_s", p.source_coeff},
      {"c_e", p.edge_coeff},
      {"c_d", p.diffusion_coeff},
      {"dt", p.dt},
      {"max_iters", p.max_iters},
      {"tol", p.tol},
      {"k_pm", p.k_pm},
      {"alpha", p.alpha},
      {"k_mem", p.memory},
      {"attenuation",
       {{"mode", p.attenuation == PDEBIN_ATTENUATION_LINEAR ? "linear" : "nonlinear"},
        {"gain", p.gain},
        {"bias", p.bias},
        {"slope", p.slope},
        {"midpoint", p.midpoint_auto ? json("auto") : json(p.midpoint)}}},
      {"contrast", {{"radius", p.contrast_radius}, {"epsilon", p.contrast_epsilon}}},
      {"edge", {{"mix", p.edge_mix}}},
      {"target", {{"radius", p.target_radius}, {"kappa", p.target_kappa}, {"range", p.target_range}}},
      {"threshold", p.threshold == PDEBIN_THRESHOLD_OTSU ? "otsu" : "fixed"},
      {"input", cfg.input},
      {"output", cfg.output},
  };
  return doc.dump(2) + "\n";
}

}  // namespace pdebin::cli
