#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace sqzlink::cli {

// Decimal, 9 significant digits, independent of the global locale. Infinities
// print as "inf" / "-inf".
std::string format_number(double value);

using Cell = std::variant<double, std::uint64_t, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

void write_csv(std::ostream& os, const Table& table);
// Array of row objects keyed by header; numbers rounded through format_number.
nlohmann::json table_to_json(const Table& table);

std::string sha256_hex(std::string_view bytes);

struct OutputDigest {
  std::string path;
  std::string sha256;
};

struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::uint64_t master_seed = 0;
  std::string timestamp;
  std::vector<OutputDigest> outputs;

  nlohmann::json to_json() const;
};

std::string utc_timestamp();

// Throws IoError carrying the path on failure.
void write_file(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace sqzlink::cli
