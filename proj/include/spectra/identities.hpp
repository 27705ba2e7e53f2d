#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "spectra/ensemble.hpp"
#include "spectra/measures.hpp"

namespace spectra {

struct IdentityReport {
  std::string name;
  int n = 0;
  std::uint64_t seed = 0;
  double max_abs_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  // Extra diagnostics for machine-readable reports (bound values, slack, ...).
  std::map<std::string, double> details;
};

// Low-discrepancy points in the band Im z in [0.05, 2], E in [-3, 3].
std::vector<HalfPlanePoint> make_z_grid(int count);

// Eq-style check: the corner of the circulant rebuilt from b equals the
// modified Toeplitz matrix. Dense comparison up to n = 512, random-vector
// probing above.
IdentityReport check_embedding_identity(const ToeplitzSample& sample);

// (2n)^{-1/2} U* Q C Q U == P D P, entrywise up to n = 512, probed above.
IdentityReport check_pdp_identity(const CirculantSystem& system, const ToeplitzSample& sample);

// Equal sums of spectral measures for vector families with equal frame
// operators; compared through Stieltjes transforms at quasi-random z.
// Throws std::invalid_argument when sum u u* != sum v v* (hypothesis
// violation, distinct from a failed comparison).
IdentityReport check_spectral_equality(const Eigen::MatrixXcd& a,
                                       std::span<const Eigen::VectorXcd> us,
                                       std::span<const Eigen::VectorXcd> vs);

// Per-realization Stieltjes identity: s(z; esd(T_mod / sqrt(n))) equals
// (1/n) sum_j <P e_j, (sqrt(2) PDP - z)^{-1} P e_j> on the given grid.
IdentityReport check_toeplitz_stieltjes_identity(const ToeplitzSample& sample,
                                                 const CirculantSystem& system,
                                                 std::span<const HalfPlanePoint> z_grid);

// W2(esd(T/sqrt n), esd(T_mod/sqrt n))^2 <= (sqrt2-1)^2 a_0^2 / n.
IdentityReport check_hoffman_wielandt(const GaussianSequence& a);

// All five checks for one (n, seed); tolerances multiplied by tol_scale.
std::vector<IdentityReport> run_identity_suite(int n, std::uint64_t seed, double tol_scale = 1.0);

}  // namespace spectra
