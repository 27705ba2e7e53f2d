#include "spectra/linalg.hpp"

#include <stdexcept>
#include <string>

namespace spectra {

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Eigen::MatrixXcd& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(Eigen::MatrixXcd(a - a.adjoint())) <= tol;
}

HermitianEigen eigensolve_hermitian(const Eigen::MatrixXcd& a, bool with_vectors,
                                    double hermitian_tol, int dim_cap) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigensolve: matrix must be square");
  if (a.rows() > dim_cap)
    throw std::invalid_argument("eigensolve: dimension " + std::to_string(a.rows()) +
                                " exceeds cap " + std::to_string(dim_cap));
  if (!is_hermitian(a, hermitian_tol))
    throw std::invalid_argument("eigensolve: matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      a, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolve: iteration failed to converge");
  HermitianEigen out;
  out.values = solver.eigenvalues();
  if (with_vectors) out.vectors = solver.eigenvectors();
  return out;
}

Eigen::VectorXd eigenvalues_symmetric(const Eigen::MatrixXd& a, int dim_cap) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigensolve: matrix must be square");
  if (a.rows() > dim_cap)
    throw std::invalid_argument("eigensolve: dimension " + std::to_string(a.rows()) +
                                " exceeds cap " + std::to_string(dim_cap));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolve: iteration failed to converge");
  return solver.eigenvalues();
}

}  // namespace spectra
