#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "spectra/identities.hpp"
#include "spectra/linalg.hpp"
#include "spectra/rng.hpp"

using namespace spectra;

namespace {

GaussianSequence fixed_sequence(std::initializer_list<double> values) {
  GaussianSequence seq;
  seq.n = int(values.size()) - 1;
  seq.seed = 0;
  seq.a.assign(values);
  return seq;
}

}  // namespace

TEST_CASE("embedding identity at n=1 and a moderate size") {
  const ToeplitzSample tiny = build_toeplitz(fixed_sequence({1.0, 1.0}), true);
  const IdentityReport r1 = check_embedding_identity(tiny);
  CHECK(r1.max_abs_error == 0.0);
  CHECK(r1.passed);

  const ToeplitzSample mid = build_toeplitz(sample_gaussian(64, 3), true);
  const IdentityReport r2 = check_embedding_identity(mid);
  CHECK(r2.max_abs_error <= 1e-12);
  CHECK(r2.passed);
}

TEST_CASE("pdp identity at n=1 reduces to the half matrix") {
  const GaussianSequence a = fixed_sequence({0.8, -1.3});
  const CirculantSystem system = build_system(a);
  const ToeplitzSample sample = build_toeplitz(a, true);
  const IdentityReport r = check_pdp_identity(system, sample);
  CHECK(r.max_abs_error <= 1e-15);
  CHECK(r.passed);
}

TEST_CASE("pdp identity at n=128") {
  const GaussianSequence a = sample_gaussian(128, 1);
  const IdentityReport r = check_pdp_identity(build_system(a), build_toeplitz(a, true));
  CHECK(r.max_abs_error <= 1e-10);
  CHECK(r.passed);
}

TEST_CASE("spectral equality: unitary columns versus coordinate basis") {
  const int dim = 6;
  Eigen::MatrixXcd gauss(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      gauss(i, j) = {rng::normal(31, 0, std::uint64_t(i * dim + j)),
                     rng::normal(31, 1, std::uint64_t(i * dim + j))};
  const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(gauss).householderQ();
  Eigen::MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j <= i; ++j) {
      a(i, j) = {rng::normal(32, 0, std::uint64_t(i * dim + j)),
                 i == j ? 0.0 : rng::normal(32, 1, std::uint64_t(i * dim + j))};
      a(j, i) = std::conj(a(i, j));
    }

  std::vector<Eigen::VectorXcd> us, vs;
  for (int j = 0; j < dim; ++j) {
    us.push_back(q.col(j));
    Eigen::VectorXcd ej = Eigen::VectorXcd::Zero(dim);
    ej[j] = 1.0;
    vs.push_back(ej);
  }
  const IdentityReport r = check_spectral_equality(a, us, vs);
  CHECK(r.passed);
  CHECK(r.max_abs_error <= 1e-9);
}

TEST_CASE("spectral equality: sqrt-2 scaling versus duplication") {
  const int dim = 5;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) a(i, i) = double(i) - 2.0;
  Eigen::VectorXcd w(dim);
  for (int i = 0; i < dim; ++i)
    w[i] = {rng::normal(33, 0, std::uint64_t(i)), rng::normal(33, 1, std::uint64_t(i))};
  std::vector<Eigen::VectorXcd> us{std::numbers::sqrt2 * w};
  std::vector<Eigen::VectorXcd> vs{w, w};
  const IdentityReport r = check_spectral_equality(a, us, vs);
  CHECK(r.passed);
}

TEST_CASE("spectral equality rejects unequal frames") {
  const int dim = 3;
  const Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(dim);
  e0[0] = 1.0;
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(dim);
  e1[1] = 1.0;
  std::vector<Eigen::VectorXcd> us{e0};
  std::vector<Eigen::VectorXcd> vs{e1};
  CHECK_THROWS_AS(check_spectral_equality(a, us, vs), std::invalid_argument);
}

TEST_CASE("spectral equality on the lemma frames for PDP") {
  const int n = 8;
  const GaussianSequence a = sample_gaussian(n, 17);
  const CirculantSystem system = build_system(a);
  const Eigen::MatrixXcd uh = dft_matrix(2 * n).adjoint();
  std::vector<Eigen::VectorXcd> us, vs;
  for (int j = 0; j < n; ++j) us.push_back(uh.col(j));
  for (int j = 0; j < 2 * n; ++j) vs.push_back(system.P.col(j));
  const IdentityReport r = check_spectral_equality(build_pdp(system), us, vs);
  CHECK(r.passed);
  CHECK(r.max_abs_error <= 1e-9);
}

TEST_CASE("toeplitz stieltjes identity at n=1 analytically") {
  const GaussianSequence a = fixed_sequence({0.9, 2.2});
  const CirculantSystem system = build_system(a);
  const ToeplitzSample sample = build_toeplitz(a, true);
  const auto grid = make_z_grid(10);
  const IdentityReport r = check_toeplitz_stieltjes_identity(sample, system, grid);
  CHECK(r.max_abs_error <= 1e-12);
  // The n=1 left side is 1/(sqrt(2) a0 - z) on the nose.
  const std::complex<double> z = grid[0].value();
  const std::complex<double> expected = 1.0 / (std::numbers::sqrt2 * 0.9 - z);
  const Eigen::VectorXd ev = eigenvalues_symmetric(sample.matrix);
  const std::complex<double> lhs = 1.0 / (ev[0] - z);
  CHECK(std::abs(lhs - expected) <= 1e-13);
}

TEST_CASE("toeplitz stieltjes identity at n=64") {
  const GaussianSequence a = sample_gaussian(64, 5);
  const CirculantSystem system = build_system(a);
  const ToeplitzSample sample = build_toeplitz(a, true);
  const std::vector<HalfPlanePoint> grid{{0.3, 0.1}, {-1.0, 0.05}, {2.0, 1.0}};
  const IdentityReport r = check_toeplitz_stieltjes_identity(sample, system, grid);
  CHECK(r.max_abs_error <= 1e-8);
  CHECK(r.passed);
}

TEST_CASE("hoffman-wielandt bound with forced a0 = 0") {
  GaussianSequence a = sample_gaussian(16, 6);
  a.a[0] = 0.0;
  const IdentityReport r = check_hoffman_wielandt(a);
  CHECK(r.passed);
  CHECK(r.details.at("w2_squared") <= 1e-20);
  CHECK(r.details.at("bound") == 0.0);
}

TEST_CASE("hoffman-wielandt bound shrinks like 1/n") {
  const IdentityReport small = check_hoffman_wielandt(sample_gaussian(128, 4));
  const IdentityReport big = check_hoffman_wielandt(sample_gaussian(512, 4));
  CHECK(small.passed);
  CHECK(big.passed);
  // Same seed means the same a0, so the bound ratio is exactly 4.
  CHECK(small.details.at("bound") ==
        doctest::Approx(4.0 * big.details.at("bound")).epsilon(1e-12));
  CHECK(small.details.at("slack") >= 0.0);
}

TEST_CASE("identity suite returns five passing reports") {
  const auto reports = run_identity_suite(16, 2);
  REQUIRE(reports.size() == 5);
  for (const auto& r : reports) {
    CAPTURE(r.name);
    CHECK(r.passed);
  }
  CHECK_THROWS_AS(run_identity_suite(0, 1), std::invalid_argument);
}
