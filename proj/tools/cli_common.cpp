#include "cli_common.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace spectra::cli {

EnergyGrid parse_energy_grid(const std::string& text) {
  EnergyGrid grid;
  const auto first = text.find(':');
  const auto second = text.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos)
    throw std::invalid_argument("energy grid must be lo:hi:step, got '" + text + "'");
  try {
    grid.lo = std::stod(text.substr(0, first));
    grid.hi = std::stod(text.substr(first + 1, second - first - 1));
    grid.step = std::stod(text.substr(second + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("energy grid must be numeric lo:hi:step, got '" + text + "'");
  }
  if (!(grid.step > 0.0) || !(grid.hi >= grid.lo))
    throw std::invalid_argument("energy grid needs hi >= lo and step > 0");
  return grid;
}

std::vector<double> expand(const EnergyGrid& grid) {
  std::vector<double> points;
  const int count = int(std::floor((grid.hi - grid.lo) / grid.step + 1e-9)) + 1;
  points.reserve(std::size_t(count));
  for (int i = 0; i < count; ++i) points.push_back(grid.lo + grid.step * i);
  return points;
}

nlohmann::json report_to_json(const IdentityReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  j["n"] = report.n;
  j["seed"] = report.seed;
  j["max_abs_error"] = report.max_abs_error;
  j["tolerance"] = report.tolerance;
  j["passed"] = report.passed;
  if (!report.details.empty()) j["details"] = report.details;
  return j;
}

nlohmann::json check_to_json(const BoundCheck& check) {
  nlohmann::json j;
  j["id"] = check.id;
  j["eps"] = check.eps;
  j["delta"] = check.delta;
  j["E"] = check.energy;
  j["lambda"] = check.lambda;
  j["lhs"] = check.lhs;
  j["rhs"] = check.rhs;
  j["margin"] = check.margin;
  j["passed"] = check.passed;
  return j;
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += io::format_double(values[i]);
  }
  return out;
}

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

std::string join_seeds(const std::vector<std::uint64_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

void emit_payload(const std::optional<std::string>& out, const std::string& payload,
                  io::RunManifest manifest) {
  if (out) {
    manifest.finished = io::iso8601_utc_now();
    io::write_text_file(*out, payload);
    manifest.write_alongside(*out);
  } else {
    std::fputs(payload.c_str(), stdout);
  }
}

}  // namespace spectra::cli
