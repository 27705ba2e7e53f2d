#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "spectra/ensemble.hpp"
#include "spectra/quadrature.hpp"

namespace spectra {

// Centered Gaussian density of scale*Z with its L1 norm triple
// (||g||_1, ||g'||_1, ||g''||_1), the three constants the averaging bound
// is made of.
struct GaussianDensity {
  double scale = 1.0;
  double norm_g = 0.0;
  double norm_g1 = 0.0;
  double norm_g2 = 0.0;

  double operator()(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;
};

// L1 norms of (g, g', g'') computed by adaptive quadrature, splitting at the
// sign changes of the integrands.
std::array<double, 3> gaussian_norms(double scale);

GaussianDensity make_gaussian_density(double scale);

// Which rank-one piece of P E_j P to take as B_j.
enum class BVariant { Low, High };

// One-parameter family H(lambda) = P (D + (lambda - d_j) E_j) P: the
// distinguished coupling d_j (and its mirror d_{2n-j}) replaced by lambda.
// H is linear in lambda; Hdot = P E_j P dominates c0 * B^2 with c0 = 2.
// phi is stored unit-norm: every bound below is stated for ||phi|| = 1.
struct WegnerFamily {
  int dim = 0;
  int j = -1;  // -1 for the scalar self-test family
  double coupling_center = 0.0;
  double c0 = 2.0;
  Eigen::MatrixXcd base;  // H at coupling_center, i.e. P D P
  Eigen::MatrixXcd hdot;  // dH/dlambda
  Eigen::MatrixXcd b_op;  // B
  Eigen::VectorXcd phi;
  GaussianDensity g;

  Eigen::MatrixXcd h(double lambda) const {
    return base + (lambda - coupling_center) * hdot;
  }
};

WegnerFamily build_family(const CirculantSystem& system, int j, BVariant variant,
                          const Eigen::VectorXcd& phi);

// H(lambda) = lambda, B = 1, c0 = 1, g of scale 1: every quantity has a
// closed form, used to pin the machinery before trusting it on matrices.
WegnerFamily scalar_family();

// R(lambda, eps, delta) = (H(lambda) - E + i delta + i eps Hdot)^{-1}.
Eigen::MatrixXcd regularized_resolvent(const WegnerFamily& fam, double lambda, double eps,
                                       double delta, double energy);

// K = B R B.
Eigen::MatrixXcd kernel_K(const WegnerFamily& fam, double lambda, double eps, double delta,
                          double energy);

struct WegnerQuadrature {
  double half_width_sds = 10.0;  // integration half-width in units of g's scale, >= 8
  int min_nodes = 2000;
  double abs_tol = 1e-9;
  int max_panels = 60000;
};

struct FValue {
  std::complex<double> value{0.0, 0.0};
  double quad_error = 0.0;  // discretization estimate + Gaussian tail bound
};

// F(eps, delta) = int g(lambda) <phi, K phi> dlambda. eps = 0 gives the
// plain smoothed resolvent average.
FValue compute_F(const WegnerFamily& fam, double eps, double delta, double energy,
                 const WegnerQuadrature& quad = {});

// Same with g' in place of g.
FValue compute_F_tilde(const WegnerFamily& fam, double eps, double delta, double energy,
                       const WegnerQuadrature& quad = {});

// dF/deps from the double-resolvent form -i * int g <phi, B R Hdot R B phi>;
// cross-checks the finite-difference derivative used in the bound suite.
FValue compute_dF_deps_analytic(const WegnerFamily& fam, double eps, double delta, double energy,
                                const WegnerQuadrature& quad = {});

struct BoundCheck {
  std::string id;
  double eps = 0.0;
  double delta = 0.0;
  double energy = 0.0;
  double lambda = 0.0;  // only for pointwise checks
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs after slack
  bool passed = false;
};

struct WegnerReport {
  std::vector<BoundCheck> checks;
  bool all_passed = true;
};

// Pointwise chain ||K phi|| >= -Im<phi, K phi> >= c0 eps ||K phi||^2 on a
// lambda grid.
WegnerReport verify_apriori_bound(const WegnerFamily& fam, std::span<const double> lambda_grid,
                                  double eps, double delta, double energy);

// The F bounds: |F| <= (eps c0)^{-1}||g||_1; |dF/deps| (central difference,
// step min(eps/10, 1e-3)) <= (eps c0)^{-1}||g'||_1; the log-integrated bound;
// and the eps-uniform triple-norm bound.
WegnerReport verify_F_bounds(const WegnerFamily& fam, std::span<const double> eps_ladder,
                             std::span<const double> deltas, std::span<const double> energies,
                             const WegnerQuadrature& quad = {});

// The spectral-averaging bound itself, at eps = 0 with the -i delta
// resolvent: |int g <phi, B (H - E - i delta)^{-1} B phi>| bounded by
// c0^{-1} (||g||_1 + ||g'||_1 + ||g''||_1).
WegnerReport verify_spectral_averaging(const WegnerFamily& fam, std::span<const double> energies,
                                       std::span<const double> deltas,
                                       const WegnerQuadrature& quad = {});

inline constexpr double kBoundSlack = 1e-6;  // multiplicative slack on every bound

}  // namespace spectra
