#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace spectra {

// A point z = E + i*delta in the open upper half-plane.
struct HalfPlanePoint {
  double re;
  double im;

  HalfPlanePoint(double re_, double im_) : re(re_), im(im_) {
    if (!(im > 0.0)) throw std::invalid_argument("HalfPlanePoint: im must be > 0");
  }

  std::complex<double> value() const { return {re, im}; }
};

// Finite measure on R held as strictly increasing atoms with nonnegative
// weights. Construction canonicalizes: atoms are sorted and near-duplicates
// (closer than 1e-12 * max(1, |atom|), the slop dense eigensolvers leave on
// multiple eigenvalues) are merged by weight addition.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  DiscreteMeasure(std::vector<double> atoms, std::vector<double> weights);

  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  double total_mass() const { return total_mass_; }
  std::size_t size() const { return atoms_.size(); }
  bool is_probability(double tol = 1e-9) const { return std::abs(total_mass_ - 1.0) <= tol; }

 private:
  std::vector<double> atoms_;
  std::vector<double> weights_;
  double total_mass_ = 0.0;
};

// Empirical spectral distribution: weight 1/m at each of m eigenvalues.
DiscreteMeasure esd(std::span<const double> eigenvalues);
DiscreteMeasure esd(const Eigen::VectorXd& eigenvalues);

// Spectral measure of Hermitian A at u: weight |<v_i, u>|^2 at lambda_i
// over an orthonormal eigenbasis. Total mass equals ||u||^2.
DiscreteMeasure spectral_measure(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& u);

// Cauchy-Stieltjes transform s(z; m) = sum_i w_i / (x_i - z).
std::complex<double> stieltjes_transform(const DiscreteMeasure& m, const HalfPlanePoint& z);

// Poisson-smoothed density readout of the inversion formula:
// density(E, delta) = Im(sampler(E + i*delta)) / pi. The delta ladder lets
// callers inspect stabilization as delta decreases; no limit is taken here
// (interval endpoints sitting on atoms are the caller's concern).
struct DensityProfile {
  double energy = 0.0;
  std::vector<double> density_per_delta;
};
std::vector<DensityProfile> invert_to_density(
    const std::function<std::complex<double>(const HalfPlanePoint&)>& sampler,
    std::span<const double> energy_grid, std::span<const double> delta_ladder);

// Quantile-coupling W2 distance between two probability measures. For the
// empirical measures of two equal-size spectra this equals the root mean
// squared difference of the sorted eigenvalue lists.
double wasserstein2(const DiscreteMeasure& m1, const DiscreteMeasure& m2);

}  // namespace spectra
