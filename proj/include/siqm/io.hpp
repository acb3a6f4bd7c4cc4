#ifndef SIQM_IO_HPP
#define SIQM_IO_HPP

// Serialization layer: round-trip-exact CSV tables, stable-key-order JSON
// documents, and the per-run manifest.
//
// Every floating-point field is written with the shortest decimal form that
// parses back to the identical double, so output files are byte-stable for
// identical inputs and tool version (golden-file friendly).  The manifest
// timestamp is the single intentionally nondeterministic field.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "siqm/common.hpp"
#include "siqm/grid.hpp"

namespace siqm::io {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Number formatting.
// ---------------------------------------------------------------------------

// Shortest decimal representation that round-trips to the same double.
// Non-finite values spell out as inf/-inf/nan (CSV only; JSON fields use
// json_number below, since JSON has no literal for them).
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// JSON carrier for possibly non-finite doubles: null replaces inf/nan (the
// surrounding document records why, e.g. a "degenerate" flag on the sample).
inline ordered_json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

// ---------------------------------------------------------------------------
// Filesystem helpers.
// ---------------------------------------------------------------------------

inline void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DomainError("cannot create output directory '" + dir + "': " + ec.message());
}

inline std::string path_join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
  if (!out) throw DomainError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw DomainError("write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// CSV tables: header row + data rows, LF line endings, trailing newline.
// Fields in this tool are numbers and identifiers, so quoting is not
// supported; a delimiter inside a field is a caller bug, not a file format.
// ---------------------------------------------------------------------------

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline std::string to_csv(const CsvTable& t) {
  auto check = [](const std::string& field) {
    if (field.find_first_of(",\"\n\r") != std::string::npos)
      throw DomainError("CSV field contains a delimiter: '" + field + "'");
  };
  std::string out;
  for (std::size_t j = 0; j < t.header.size(); ++j) {
    check(t.header[j]);
    if (j) out += ',';
    out += t.header[j];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.header.size())
      throw DomainError("CSV row width does not match the header");
    for (std::size_t j = 0; j < row.size(); ++j) {
      check(row[j]);
      if (j) out += ',';
      out += row[j];
    }
    out += '\n';
  }
  return out;
}

inline void write_csv(const std::string& path, const CsvTable& t) {
  write_text_file(path, to_csv(t));
}

// Two-column (x, value) table from a sampled profile.
inline CsvTable grid_csv(const GridFunction& f, const std::string& value_name) {
  CsvTable t;
  t.header = {"x", value_name};
  t.rows.reserve(static_cast<std::size_t>(f.grid.n));
  for (int i = 0; i < f.grid.n; ++i)
    t.rows.push_back({format_double(f.grid.x(i)),
                      format_double(f.values[static_cast<std::size_t>(i)])});
  return t;
}

// ---------------------------------------------------------------------------
// Run manifest: one per command invocation.
// ---------------------------------------------------------------------------

struct RunManifest {
  std::string command;
  ordered_json parameters = ordered_json::object();
  std::string tool_version = kVersion;
  ordered_json tolerances = ordered_json::object();
  std::string timestamp;             // ISO-8601 UTC; filled at write time if empty
  std::string outcome;               // one-line summary
  std::vector<std::string> ledger;   // printed-form reconciliation records
};

inline std::string now_utc() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline ordered_json manifest_json(const RunManifest& m) {
  ordered_json j;
  j["command"] = m.command;
  j["parameters"] = m.parameters;
  j["tool_version"] = m.tool_version;
  j["tolerances"] = m.tolerances;
  j["timestamp"] = m.timestamp;
  j["outcome"] = m.outcome;
  j["ledger"] = m.ledger;
  return j;
}

inline void write_manifest(const std::string& dir, RunManifest m) {
  if (m.timestamp.empty()) m.timestamp = now_utc();
  write_text_file(path_join(dir, "manifest.json"), manifest_json(m).dump(2) + "\n");
}

}  // namespace siqm::io

#endif  // SIQM_IO_HPP
