#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace spectra {

// n+1 i.i.d. standard normal coefficients a_0..a_n. Draw j depends only on
// (seed, j), so a shorter sequence is always a prefix of a longer one drawn
// from the same seed.
struct GaussianSequence {
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<double> a;  // size n+1
};

GaussianSequence sample_gaussian(int n, std::uint64_t seed);

// Symmetric Toeplitz matrix M[j][k] = a_|j-k|, with sqrt(2)*a_0 on the
// diagonal when modified.
struct ToeplitzSample {
  int n = 0;
  GaussianSequence coeffs;
  bool modified = false;
  Eigen::MatrixXd matrix;
};

ToeplitzSample build_toeplitz(const GaussianSequence& a, bool modified);

// Circulant embedding vector of length 2n:
// b_0 = sqrt(2) a_0, b_n = sqrt(2) a_n, b_j = a_j (0<j<n), b_j = a_{2n-j}
// (n<j<2n). The induced circulant has the modified Toeplitz matrix as its
// top-left n x n block.
std::vector<double> build_embedding(const GaussianSequence& a);

// Dense circulant C[i][j] = b[(j-i) mod 2n].
Eigen::MatrixXd build_circulant(std::span<const double> b);

// DFT diagonal d_j = (2n)^{-1/2} sum_k b_k exp(2*pi*i*j*k/(2n)), real for
// symmetric b. Throws if the imaginary residue exceeds 1e-10.
std::vector<double> compute_d(std::span<const double> b);

// Unitary DFT matrix U(j,k) = exp(2*pi*i*j*k/m)/sqrt(m).
Eigen::MatrixXcd dft_matrix(int m);

// Corner projection conjugated by the DFT: P = U* Q U, with Q selecting the
// first n coordinates. Dense closed form; Hermitian, idempotent, constant
// 1/2 diagonal.
Eigen::MatrixXcd build_projection(int n);

// Implicit application y = P x via two FFTs and a truncation; works at any
// size, used where the dense 2n x 2n matrix would not fit.
Eigen::VectorXcd apply_projection(int n, const Eigen::VectorXcd& x);

struct CirculantSystem {
  int n = 0;
  std::vector<double> b;  // length 2n
  std::vector<double> d;  // length 2n
  Eigen::MatrixXcd P;     // 2n x 2n
};

CirculantSystem build_system(const GaussianSequence& a);

// P diag(d) P.
Eigen::MatrixXcd build_pdp(const CirculantSystem& system);

// O(n log n) circulant and Toeplitz products against dense-path accuracy
// 1e-10 * scale.
std::vector<double> circulant_matvec(std::span<const double> b, std::span<const double> x);
std::vector<double> toeplitz_matvec(const ToeplitzSample& sample, std::span<const double> x);

// Random Hankel matrix H[j][k] = a_{j+k} built from 2n-1 coefficients; the
// exploratory counterpart of the Toeplitz ensemble.
Eigen::MatrixXd build_hankel(int n, std::uint64_t seed);

}  // namespace spectra
