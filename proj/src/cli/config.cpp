#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "output.hpp"
#include "sqzlink/errors.hpp"

namespace sqzlink::cli {

namespace {

double parse_double(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw DomainError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::vector<double> parse_sweep(std::string_view text) {
  if (text.find_first_not_of(' ') == std::string_view::npos) throw DomainError("empty sweep");
  if (text.find(':') == std::string_view::npos) {
    std::vector<double> values;
    for (auto part : split(text, ',')) values.push_back(parse_double(part));
    return values;
  }
  auto parts = split(text, ':');
  const bool geometric = parts.front() == "geom";
  if (geometric) parts.erase(parts.begin());
  if (parts.size() != 3) throw DomainError("range sweep must be start:stop:count");
  const double start = parse_double(parts[0]);
  const double stop = parse_double(parts[1]);
  const double count_d = parse_double(parts[2]);
  if (count_d < 1 || count_d != std::floor(count_d) || count_d > 1e7) {
    throw DomainError("range sweep count must be a positive integer");
  }
  const auto count = static_cast<std::size_t>(count_d);
  if (count == 1 && start != stop) throw DomainError("a one-point range needs start == stop");
  if (geometric && !(start > 0 && stop > 0)) {
    throw DomainError("geometric sweep bounds must be positive");
  }
  std::vector<double> values(count, start);
  for (std::size_t i = 1; i < count; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    values[i] = geometric ? start * std::pow(stop / start, f) : start + (stop - start) * f;
  }
  values.back() = stop;
  return values;
}

std::string json_value_to_flag(const nlohmann::json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_number_integer()) return value.dump();
  if (value.is_number()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value.get<double>());
    return buf;
  }
  if (value.is_array()) {
    std::string joined;
    for (const auto& item : value) {
      if (!joined.empty()) joined += ',';
      joined += json_value_to_flag(item);
    }
    return joined;
  }
  throw DomainError("unsupported config value: " + value.dump());
}

nlohmann::json load_config(const std::string& path, std::string* command) {
  const std::string text = read_file(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(path, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw IoError(path, "config must be a JSON object");
  // Written manifests and JSON reports carry the resolved flags under "config".
  if (doc.contains("manifest") && doc["manifest"].is_object()) doc = doc["manifest"];
  if (doc.contains("config") && doc["config"].is_object()) {
    if (command && doc.contains("command") && doc["command"].is_string()) {
      *command = doc["command"].get<std::string>();
    }
    return doc["config"];
  }
  return doc;
}

ArgScan scan_args(const std::vector<std::string>& args,
                  const std::vector<std::string>& commands) {
  ArgScan scan;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config" && i + 1 < args.size()) {
      scan.config_path = args[i + 1];
      ++i;
    } else if (a.rfind("--config=", 0) == 0) {
      scan.config_path = a.substr(9);
    } else if (scan.subcommand < 0 &&
               std::find(commands.begin(), commands.end(), a) != commands.end()) {
      scan.subcommand = static_cast<std::ptrdiff_t>(i);
    }
  }
  return scan;
}

bool has_flag(const std::vector<std::string>& args, std::string_view flag) {
  for (const auto& a : args) {
    if (a == flag) return true;
    if (a.size() > flag.size() && a.compare(0, flag.size(), flag) == 0 && a[flag.size()] == '=') {
      return true;
    }
  }
  return false;
}

}  // namespace sqzlink::cli
