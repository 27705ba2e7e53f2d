#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spectra/identities.hpp"
#include "spectra/io.hpp"
#include "spectra/wegner.hpp"

namespace spectra::cli {

// Command outcomes per the exit-code contract: 0 ok, 1 a mathematical
// check failed, 2 usage error (the latter raised as std::invalid_argument).
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct EnergyGrid {
  double lo = -6.0;
  double hi = 6.0;
  double step = 0.25;
};

// Parses "lo:hi:step".
EnergyGrid parse_energy_grid(const std::string& text);
std::vector<double> expand(const EnergyGrid& grid);

nlohmann::json report_to_json(const IdentityReport& report);
nlohmann::json check_to_json(const BoundCheck& check);

std::string join_doubles(const std::vector<double>& values);
std::string join_ints(const std::vector<int>& values);
std::string join_seeds(const std::vector<std::uint64_t>& values);

// Writes payload (and its manifest) when out is set; otherwise prints the
// payload to stdout.
void emit_payload(const std::optional<std::string>& out, const std::string& payload,
                  io::RunManifest manifest);

struct VerifyOptions {
  std::vector<int> ns;
  std::vector<std::uint64_t> seeds{1};
  double tol_scale = 1.0;
  std::optional<std::string> out;
  int threads = 0;
};
int cmd_verify(const VerifyOptions& opt);

struct StieltjesOptions {
  int n = 64;
  int samples = 100;
  std::uint64_t seed = 1;
  std::string egrid = "-6:6:0.25";
  std::vector<double> imz{0.2, 0.05, 0.01};
  std::optional<std::string> out;
  int threads = 0;
  bool verify_identity = false;
};
int cmd_stieltjes(const StieltjesOptions& opt);

struct DensityOptions {
  int n = 256;
  int samples = 100;
  std::uint64_t seed = 1;
  double grid_min = -6.0;
  double grid_max = 6.0;
  int grid_points = 481;
  std::optional<double> bandwidth;
  std::string ensemble = "toeplitz";
  int bootstrap = 64;
  std::optional<std::string> out;
  int threads = 0;
};
int cmd_density(const DensityOptions& opt);

struct WegnerOptions {
  bool self_test = false;
  int n = 16;
  std::uint64_t seed = 1;
  int j = 1;
  std::string variant = "low";
  std::vector<double> energies{-2.0, 0.0, 2.0};
  std::vector<double> deltas{0.5, 0.05, 0.005};
  std::vector<double> eps_ladder{1.0, 0.3, 0.1, 0.03, 0.01, 0.003, 0.001};
  int quad_points = 2000;
  int lambda_points = 200;
  std::optional<std::string> out;
  int threads = 0;
};
int cmd_wegner(const WegnerOptions& opt);

struct HwOptions {
  std::vector<int> ns;
  std::vector<std::uint64_t> seeds{1};
  std::optional<std::string> out;
  int threads = 0;
};
int cmd_hw(const HwOptions& opt);

struct MomentsOptions {
  int n = 64;
  int samples = 200;
  std::uint64_t seed = 1;
  int max_order = 6;
  std::optional<std::string> out;
  int threads = 0;
};
int cmd_moments(const MomentsOptions& opt);

}  // namespace spectra::cli
