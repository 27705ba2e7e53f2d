#include "spectra/identities.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "spectra/fft.hpp"
#include "spectra/linalg.hpp"
#include "spectra/rng.hpp"

namespace spectra {
namespace {

constexpr int kDenseCheckMaxN = 512;
constexpr int kProbeCount = 30;

double frac(double x) { return x - std::floor(x); }

// One eigendecomposition, summed weights: sum_i sigma(A, u_i) as a measure.
DiscreteMeasure summed_spectral_measure(const HermitianEigen& eig,
                                        std::span<const Eigen::VectorXcd> vectors) {
  const Eigen::Index m = eig.values.size();
  std::vector<double> atoms(static_cast<std::size_t>(m));
  std::vector<double> weights(static_cast<std::size_t>(m), 0.0);
  for (Eigen::Index k = 0; k < m; ++k) atoms[std::size_t(k)] = eig.values(k);
  for (const auto& u : vectors) {
    if (u.size() != m) throw std::invalid_argument("spectral equality: vector length mismatch");
    for (Eigen::Index k = 0; k < m; ++k)
      weights[std::size_t(k)] += std::norm(eig.vectors.col(k).dot(u));
  }
  return DiscreteMeasure(std::move(atoms), std::move(weights));
}

Eigen::MatrixXd modified_matrix(const ToeplitzSample& sample) {
  return sample.modified ? sample.matrix : build_toeplitz(sample.coeffs, true).matrix;
}

// Random unit-norm complex probe, deterministic in (seed, index).
Eigen::VectorXcd probe_vector(int dim, std::uint64_t seed, std::uint64_t index) {
  Eigen::VectorXcd x(dim);
  for (int i = 0; i < dim; ++i)
    x[i] = std::complex<double>(
        rng::normal(seed, rng::stream::kProbes, 2 * (index * std::uint64_t(dim) + std::uint64_t(i))),
        rng::normal(seed, rng::stream::kProbes, 2 * (index * std::uint64_t(dim) + std::uint64_t(i)) + 1));
  return x / x.norm();
}

std::vector<std::complex<double>> circulant_apply_complex(std::span<const double> b,
                                                          const Eigen::VectorXcd& x) {
  const std::size_t m = b.size();
  const auto spec = fft::dft_plus_real(b);
  std::vector<std::complex<double>> xs(x.data(), x.data() + m);
  auto fx = fft::dft_minus(xs);
  for (std::size_t i = 0; i < m; ++i) fx[i] *= spec[i];
  auto y = fft::dft_plus(fx);
  for (std::size_t i = 0; i < m; ++i) y[i] /= double(m);
  return y;
}

}  // namespace

std::vector<HalfPlanePoint> make_z_grid(int count) {
  if (count < 1) throw std::invalid_argument("make_z_grid: count must be >= 1");
  std::vector<HalfPlanePoint> grid;
  grid.reserve(std::size_t(count));
  // Golden-ratio / sqrt2 Kronecker sequence; deterministic and well spread.
  const double phi = 0.6180339887498949;
  const double rho = 0.41421356237309515;
  for (int k = 0; k < count; ++k) {
    const double e = -3.0 + 6.0 * frac(0.5 + phi * (k + 1));
    const double im = 0.05 + 1.95 * frac(0.5 + rho * (k + 1));
    grid.emplace_back(e, im);
  }
  return grid;
}

IdentityReport check_embedding_identity(const ToeplitzSample& sample) {
  const int n = sample.n;
  IdentityReport report;
  report.name = "embedding_identity";
  report.n = n;
  report.seed = sample.coeffs.seed;
  report.tolerance = 1e-12;

  const Eigen::MatrixXd t_mod = modified_matrix(sample);
  const auto b = build_embedding(sample.coeffs);

  double err = 0.0;
  if (n <= kDenseCheckMaxN) {
    const Eigen::MatrixXd c = build_circulant(b);
    err = max_abs(Eigen::MatrixXd(c.topLeftCorner(n, n) - t_mod));
  } else {
    for (int p = 0; p < kProbeCount; ++p) {
      Eigen::VectorXcd x = probe_vector(n, sample.coeffs.seed, std::uint64_t(p));
      Eigen::VectorXcd padded = Eigen::VectorXcd::Zero(2 * n);
      padded.head(n) = x;
      const auto cx = circulant_apply_complex(b, padded);
      const Eigen::VectorXcd tx = t_mod * x;
      for (int i = 0; i < n; ++i) err = std::max(err, std::abs(cx[std::size_t(i)] - tx[i]));
    }
    report.tolerance = 1e-8;
  }
  report.max_abs_error = err;
  report.passed = report.max_abs_error <= report.tolerance;
  return report;
}

IdentityReport check_pdp_identity(const CirculantSystem& system, const ToeplitzSample& sample) {
  const int n = system.n;
  const int m = 2 * n;
  IdentityReport report;
  report.name = "pdp_identity";
  report.n = n;
  report.seed = sample.coeffs.seed;

  const double inv_sqrt_m = 1.0 / std::sqrt(double(m));
  if (n <= kDenseCheckMaxN) {
    report.tolerance = 1e-10;
    const Eigen::MatrixXcd u = dft_matrix(m);
    Eigen::MatrixXd qcq = Eigen::MatrixXd::Zero(m, m);
    qcq.topLeftCorner(n, n) = build_circulant(system.b).topLeftCorner(n, n);
    const Eigen::MatrixXcd lhs = inv_sqrt_m * (u.adjoint() * qcq * u);
    const Eigen::MatrixXcd rhs = build_pdp(system);
    report.max_abs_error = max_abs(Eigen::MatrixXcd(lhs - rhs));
  } else {
    report.tolerance = 1e-8;
    const Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(system.d.data(), m);
    double err = 0.0;
    for (int p = 0; p < kProbeCount; ++p) {
      const Eigen::VectorXcd x = probe_vector(m, sample.coeffs.seed, std::uint64_t(p));
      // Left side: (2n)^{-1/2} U* Q C Q U x, all factors applied via FFT.
      std::vector<std::complex<double>> xs(x.data(), x.data() + m);
      auto ux = fft::dft_plus(xs);
      Eigen::VectorXcd t(m);
      for (int i = 0; i < m; ++i) t[i] = ux[std::size_t(i)] * inv_sqrt_m;
      t.tail(n).setZero();
      const auto ct = circulant_apply_complex(system.b, t);
      Eigen::VectorXcd qct = Eigen::VectorXcd::Zero(m);
      for (int i = 0; i < n; ++i) qct[i] = ct[std::size_t(i)];
      std::vector<std::complex<double>> qs(qct.data(), qct.data() + m);
      auto back = fft::dft_minus(qs);
      Eigen::VectorXcd lhs(m);
      for (int i = 0; i < m; ++i) lhs[i] = back[std::size_t(i)] * inv_sqrt_m * inv_sqrt_m;
      // Right side: P D P x via the implicit projection.
      Eigen::VectorXcd rhs = apply_projection(n, x);
      rhs.array() *= d.array();
      rhs = apply_projection(n, rhs);
      err = std::max(err, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    report.max_abs_error = err;
  }
  report.passed = report.max_abs_error <= report.tolerance;
  return report;
}

IdentityReport check_spectral_equality(const Eigen::MatrixXcd& a,
                                       std::span<const Eigen::VectorXcd> us,
                                       std::span<const Eigen::VectorXcd> vs) {
  const Eigen::Index m = a.rows();
  Eigen::MatrixXcd frame_u = Eigen::MatrixXcd::Zero(m, m);
  Eigen::MatrixXcd frame_v = Eigen::MatrixXcd::Zero(m, m);
  for (const auto& u : us) frame_u += u * u.adjoint();
  for (const auto& v : vs) frame_v += v * v.adjoint();
  const double frame_gap = max_abs(Eigen::MatrixXcd(frame_u - frame_v));
  if (frame_gap > 1e-12)
    throw std::invalid_argument("hypothesis violated: sum u u* != sum v v* (gap " +
                                std::to_string(frame_gap) + ")");

  IdentityReport report;
  report.name = "spectral_equality";
  report.n = int(m);
  report.tolerance = 1e-9;
  report.details["frame_gap"] = frame_gap;

  const HermitianEigen eig = eigensolve_hermitian(a, /*with_vectors=*/true);
  const DiscreteMeasure mu = summed_spectral_measure(eig, us);
  const DiscreteMeasure mv = summed_spectral_measure(eig, vs);
  double err = 0.0;
  for (const auto& z : make_z_grid(20))
    err = std::max(err, std::abs(stieltjes_transform(mu, z) - stieltjes_transform(mv, z)));
  report.max_abs_error = err;
  report.passed = err <= report.tolerance;
  return report;
}

IdentityReport check_toeplitz_stieltjes_identity(const ToeplitzSample& sample,
                                                 const CirculantSystem& system,
                                                 std::span<const HalfPlanePoint> z_grid) {
  const int n = system.n;
  const int m = 2 * n;
  IdentityReport report;
  report.name = "toeplitz_stieltjes_identity";
  report.n = n;
  report.seed = sample.coeffs.seed;
  report.tolerance = 1e-8;

  const Eigen::MatrixXd t_mod = modified_matrix(sample);
  const Eigen::VectorXd toeplitz_eigs = eigenvalues_symmetric(t_mod);
  const double inv_sqrt_n = 1.0 / std::sqrt(double(n));

  const Eigen::MatrixXcd pdp = build_pdp(system);
  const HermitianEigen eig = eigensolve_hermitian(pdp, /*with_vectors=*/true);
  // sum_j <P e_j, R P e_j> = tr(R P) resolved in the eigenbasis of PDP.
  // The basis change scales the operator: n^{-1/2} Q C Q conjugates to
  // sqrt(2) PDP, so the resolvent is taken at sqrt(2) * spectrum(PDP).
  const Eigen::MatrixXcd pv = system.P * eig.vectors;
  Eigen::VectorXd weights(m);
  for (int k = 0; k < m; ++k) weights[k] = eig.vectors.col(k).dot(pv.col(k)).real();

  double err = 0.0;
  for (const auto& z : z_grid) {
    const std::complex<double> zz = z.value();
    std::complex<double> lhs{0.0, 0.0};
    for (int i = 0; i < n; ++i) lhs += 1.0 / (toeplitz_eigs[i] * inv_sqrt_n - zz);
    lhs /= double(n);
    std::complex<double> rhs{0.0, 0.0};
    for (int k = 0; k < m; ++k)
      rhs += weights[k] / (std::numbers::sqrt2 * eig.values[k] - zz);
    rhs /= double(n);
    err = std::max(err, std::abs(lhs - rhs));
  }
  report.max_abs_error = err;
  report.passed = err <= report.tolerance;
  return report;
}

IdentityReport check_hoffman_wielandt(const GaussianSequence& a) {
  const int n = a.n;
  IdentityReport report;
  report.name = "hoffman_wielandt";
  report.n = n;
  report.seed = a.seed;

  const double inv_sqrt_n = 1.0 / std::sqrt(double(n));
  const Eigen::VectorXd eig_plain = eigenvalues_symmetric(build_toeplitz(a, false).matrix) * inv_sqrt_n;
  const Eigen::VectorXd eig_mod = eigenvalues_symmetric(build_toeplitz(a, true).matrix) * inv_sqrt_n;
  const double w2 = wasserstein2(esd(eig_plain), esd(eig_mod));
  const double shift = std::numbers::sqrt2 - 1.0;
  const double bound = shift * shift * a.a[0] * a.a[0] / double(n);

  report.tolerance = 1e-9 * std::max(1.0, bound);
  report.max_abs_error = std::max(0.0, w2 * w2 - bound);
  report.passed = report.max_abs_error <= report.tolerance;
  report.details["w2_squared"] = w2 * w2;
  report.details["bound"] = bound;
  report.details["slack"] = bound - w2 * w2;
  return report;
}

std::vector<IdentityReport> run_identity_suite(int n, std::uint64_t seed, double tol_scale) {
  if (n < 1) throw std::invalid_argument("run_identity_suite: n must be >= 1");
  if (!(tol_scale > 0.0)) throw std::invalid_argument("run_identity_suite: tol_scale must be > 0");
  const GaussianSequence a = sample_gaussian(n, seed);
  const ToeplitzSample sample = build_toeplitz(a, /*modified=*/true);
  const CirculantSystem system = build_system(a);

  std::vector<IdentityReport> reports;
  reports.push_back(check_embedding_identity(sample));
  reports.push_back(check_pdp_identity(system, sample));

  {
    // The Lemma-style instance: frames {U* e_j, j < n} and {P e_j, j < 2n}
    // agree for A = PDP.
    const int m = 2 * n;
    const Eigen::MatrixXcd u = dft_matrix(m);
    const Eigen::MatrixXcd uh = u.adjoint();
    std::vector<Eigen::VectorXcd> us, vs;
    us.reserve(std::size_t(n));
    vs.reserve(std::size_t(m));
    for (int j = 0; j < n; ++j) us.push_back(uh.col(j));
    for (int j = 0; j < m; ++j) vs.push_back(system.P.col(j));
    IdentityReport r = check_spectral_equality(build_pdp(system), us, vs);
    r.seed = seed;
    r.n = n;
    reports.push_back(std::move(r));
  }

  const auto z_grid = make_z_grid(20);
  reports.push_back(check_toeplitz_stieltjes_identity(sample, system, z_grid));
  reports.push_back(check_hoffman_wielandt(a));

  for (auto& r : reports) {
    r.tolerance *= tol_scale;
    r.passed = r.max_abs_error <= r.tolerance;
  }
  return reports;
}

}  // namespace spectra
