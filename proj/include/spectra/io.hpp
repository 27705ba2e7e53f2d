#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace spectra::io {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kOutputFormatVersion = "1";

// Round-trip decimal formatting (17 significant digits) so reruns diff
// cleanly.
std::string format_double(double v);
std::string format_bool(bool v);

// UTF-8, LF line endings.
void write_text_file(const std::string& path, const std::string& content);

std::string csv_line(std::span<const std::string> cells);

std::string iso8601_utc_now();

// Sidecar describing one CLI run; written next to every output file as
// <out>.manifest.json. The parameters map pins everything that determines
// the numeric payload (thread counts are deliberately not part of it).
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::uint64_t seed = 0;
  std::string started;
  std::string finished;

  std::string to_json() const;
  void write_alongside(const std::string& out_path) const;
};

}  // namespace spectra::io
