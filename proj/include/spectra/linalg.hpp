#pragma once

#include <Eigen/Dense>
#include <complex>

namespace spectra {

// Dense eigensolves beyond this dimension are refused by default
// (configurable per call site); keeps accidental O(n^3) blowups at bay.
inline constexpr int kDenseEigenCap = 4096;

double max_abs(const Eigen::MatrixXcd& m);
double max_abs(const Eigen::MatrixXd& m);

bool is_hermitian(const Eigen::MatrixXcd& a, double tol);

struct HermitianEigen {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // columns; empty when not requested
};

// Eigendecomposition of a Hermitian matrix. Throws if the input is not
// Hermitian within `hermitian_tol` or exceeds `dim_cap`.
HermitianEigen eigensolve_hermitian(const Eigen::MatrixXcd& a, bool with_vectors,
                                    double hermitian_tol = 1e-12,
                                    int dim_cap = kDenseEigenCap);

// Ascending eigenvalues of a real symmetric matrix.
Eigen::VectorXd eigenvalues_symmetric(const Eigen::MatrixXd& a, int dim_cap = kDenseEigenCap);

}  // namespace spectra
