#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace follmer::run {

/// Command-line overrides for config fields.
struct Overrides {
  std::optional<std::string> out;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
};

/// Execute a JSON experiment config; writes CSV artifacts and
/// `manifest.json` under the output directory. Returns the process exit
/// code: 0 ok, 1 assertion failure, 2 config error, 3 numerical guard.
int run_config_file(const std::string& config_path,
                    const Overrides& overrides = {});

/// Same, from config text (for in-process drivers).
int run_config_text(const std::string& config_json,
                    const Overrides& overrides = {});

/// Merge manifests from the given run directories into a CSV comparison
/// table (one row per run, sorted by experiment then seed).
std::string report_csv(const std::vector<std::string>& manifest_dirs);

}  // namespace follmer::run
