#include "output.hpp"

#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#include <openssl/evp.h>

#include "commands.hpp"
#include "sqzlink/errors.hpp"

namespace sqzlink::cli {

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

namespace {

std::string cell_text(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  if (const auto* u = std::get_if<std::uint64_t>(&cell)) return std::to_string(*u);
  return std::get<std::string>(cell);
}

}  // namespace

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    os << (i ? "," : "") << table.header[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
}

nlohmann::json table_to_json(const Table& table) {
  auto rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& cell = row[i];
      if (const auto* d = std::get_if<double>(&cell)) {
        if (std::isfinite(*d)) {
          obj[table.header[i]] = std::stod(format_number(*d));
        } else {
          obj[table.header[i]] = format_number(*d);
        }
      } else if (const auto* u = std::get_if<std::uint64_t>(&cell)) {
        obj[table.header[i]] = *u;
      } else {
        obj[table.header[i]] = std::get<std::string>(cell);
      }
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw NumericError("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json outs = nlohmann::json::array();
  for (const auto& o : outputs) outs.push_back({{"path", o.path}, {"sha256", o.sha256}});
  return {{"tool", "sqzlink"},
          {"version", std::string(kToolVersion)},
          {"command", command},
          {"config", config},
          {"master_seed", master_seed},
          {"timestamp", timestamp},
          {"outputs", outs}};
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError(path.string(), "cannot open for writing");
  os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!os) throw IoError(path.string(), "write failed");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError(path.string(), "cannot open for reading");
  std::ostringstream ss;
  ss << is.rdbuf();
  if (is.bad()) throw IoError(path.string(), "read failed");
  return ss.str();
}

}  // namespace sqzlink::cli
