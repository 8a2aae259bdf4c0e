#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace sqzlink::cli {

// "a,b,c" lists, "start:stop:count" linear ranges, "geom:start:stop:count"
// geometric ranges (start > 0). Throws DomainError on malformed input.
std::vector<double> parse_sweep(std::string_view text);

std::string json_value_to_flag(const nlohmann::json& value);

// Loads a flat config object, or the "config" object of a written manifest.
// `command` is set from the manifest when present.
nlohmann::json load_config(const std::string& path, std::string* command);

// Index of the subcommand token and the --config path (empty when absent).
struct ArgScan {
  std::ptrdiff_t subcommand = -1;
  std::string config_path;
};
ArgScan scan_args(const std::vector<std::string>& args, const std::vector<std::string>& commands);

bool has_flag(const std::vector<std::string>& args, std::string_view flag);

}  // namespace sqzlink::cli
