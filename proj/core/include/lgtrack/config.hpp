#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lgtrack/tracker.hpp"

namespace lgtrack {

/// Everything one `track` run needs. Loaded from `key = value` lines; `#`
/// starts a comment.
struct RunConfig {
  TrackerConfig tracker;
  std::string input;
  std::string output;
};

struct ConfigKey {
  std::string_view name;
  std::string_view description;
};

/// Every accepted key, in file order.
const std::vector<ConfigKey>& config_keys();

/// Sets one key. Throws InvalidArgument for an unknown key or a bad value.
void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value);
std::string get_config_value(const RunConfig& cfg, std::string_view key);

/// Parses on top of `base`. Errors carry the line number.
RunConfig parse_config(std::istream& in, const std::string& source, RunConfig base = {});
RunConfig read_config(const std::filesystem::path& path, RunConfig base = {});

/// All keys with their current values, one per line; parses back to `cfg`.
std::string format_config(const RunConfig& cfg);

/// Applies a `key=value` override.
void apply_override(RunConfig& cfg, std::string_view assignment);

}  // namespace lgtrack
