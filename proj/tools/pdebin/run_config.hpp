#pragma once

#include <stdexcept>
#include <string>

#include "pdebin/pdebin.h"

namespace pdebin::cli {

// Everything a command needs: engine parameters plus I/O paths. Serialized as
// JSON with one key per field; missing keys keep their defaults.
struct RunConfig {
  pdebin_params params{};
  std::string input;
  std::string output;

  RunConfig();
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
// Canonical form: sorted keys, two-space indent, trailing newline.
std::string serialize_config(const RunConfig& cfg);

}  // namespace pdebin::cli
