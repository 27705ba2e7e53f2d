#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "spectra/measures.hpp"

namespace spectra {

// 16*sqrt(2): the uniform ceiling on |s(z; E mu)| over the upper half-plane.
inline constexpr double kStieltjesCeiling = 16.0 * std::numbers::sqrt2;
// 16*sqrt(2)/pi: the induced ceiling on the density of the limit measure.
inline constexpr double kDensityCeiling = 16.0 * std::numbers::sqrt2 / std::numbers::pi;

struct McConfig {
  int n = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<HalfPlanePoint> z_grid;
  int threads = 0;  // 0: SPECTRA_THREADS or hardware
};

enum class StieltjesSide { Left, Right, Both };

struct ZStatistic {
  double energy = 0.0;
  double im = 0.0;
  std::complex<double> mean{0.0, 0.0};
  double stderr_re = 0.0;
  double stderr_im = 0.0;
};

struct StieltjesEstimate {
  std::vector<ZStatistic> left;    // eigenvalues of the n x n Toeplitz matrix
  std::vector<ZStatistic> right;   // resolvent trace of the 2n x 2n conjugated operator
  double max_identity_gap = 0.0;   // max per-sample |left - right|, Both only
};

// Monte Carlo mean of the Stieltjes transform of the empirical spectral
// distribution of T_mod/sqrt(n), per grid point. The right side resolves
// (PDP - z)^{-1} instead and is meant for identity verification (it costs a
// 2n x 2n eigensolve per sample).
StieltjesEstimate expected_stieltjes(const McConfig& cfg, StieltjesSide side);

// E in [-6, 6] step 0.25 crossed with Im z in {0.2, 0.05, 0.01}.
std::vector<HalfPlanePoint> key_bound_grid();

struct KeyBoundReport {
  double bound = kStieltjesCeiling;
  double max_value = 0.0;  // max over z of |mean| + 3 stderr
  bool passed = false;
  std::vector<ZStatistic> stats;
};

// |mean s| + 3 stderr <= 16 sqrt(2) at every grid z.
KeyBoundReport check_key_bound(const McConfig& cfg);

struct DensityEstimate {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> ci_halfwidth;  // 1.96 * bootstrap sd
  double bandwidth = 0.0;
  int n = 0;
  int samples = 0;
};

enum class EnsembleKind { Toeplitz, Hankel };

// Gaussian KDE over the pooled scaled eigenvalues of `samples` draws, with
// a bootstrap (over the sample axis, since eigenvalues of one draw are
// dependent) confidence half-width per grid point. An absent bandwidth
// selects Silverman's 0.9 sigma N^{-1/5}; a bandwidth <= 0 is an error.
DensityEstimate estimate_density(EnsembleKind kind, int n, int samples, std::uint64_t seed,
                                 std::vector<double> grid, std::optional<double> bandwidth,
                                 int threads = 0, int bootstrap_resamples = 64);

DensityEstimate estimate_gamma_density(int n, int samples, std::uint64_t seed,
                                       std::vector<double> grid, std::optional<double> bandwidth,
                                       int threads = 0, int bootstrap_resamples = 64);

// Same pipeline on Hankel matrices a_{j+k}; exploratory, no ceiling claim.
DensityEstimate hankel_density_explore(int n, int samples, std::uint64_t seed,
                                       std::vector<double> grid, std::optional<double> bandwidth,
                                       int threads = 0, int bootstrap_resamples = 64);

std::vector<double> uniform_grid(double lo, double hi, int points);

struct MomentEstimate {
  int order = 0;
  double mean = 0.0;
  double stderr_mean = 0.0;
};

// Monte Carlo moments of the ESD of T_mod/sqrt(n), orders 1..max_order
// (odd orders are zero-consistency diagnostics).
std::vector<MomentEstimate> moment_diagnostics(int n, int samples, std::uint64_t seed,
                                               int max_order = 6, int threads = 0);

// E integral x^2: (n^2 + n)/n^2, from summing entrywise variances.
double exact_second_moment(int n);

// E integral x^4 by Wick enumeration over index quadruples, O(n^4).
double exact_fourth_moment(int n, int threads = 0);

}  // namespace spectra
