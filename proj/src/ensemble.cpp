#include "spectra/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "spectra/fft.hpp"
#include "spectra/rng.hpp"

namespace spectra {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void require_even_length(std::size_t len) {
  if (len < 2 || len % 2 != 0)
    throw std::invalid_argument("expected an embedding vector of even length >= 2");
}

}  // namespace

GaussianSequence sample_gaussian(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_gaussian: n must be >= 1");
  GaussianSequence seq;
  seq.n = n;
  seq.seed = seed;
  seq.a.resize(std::size_t(n) + 1);
  for (int j = 0; j <= n; ++j)
    seq.a[std::size_t(j)] = rng::normal(seed, rng::stream::kCoefficients, std::uint64_t(j));
  return seq;
}

ToeplitzSample build_toeplitz(const GaussianSequence& a, bool modified) {
  ToeplitzSample sample;
  sample.n = a.n;
  sample.coeffs = a;
  sample.modified = modified;
  sample.matrix.resize(a.n, a.n);
  for (int j = 0; j < a.n; ++j)
    for (int k = 0; k < a.n; ++k)
      sample.matrix(j, k) = (j == k && modified) ? kSqrt2 * a.a[0] : a.a[std::size_t(std::abs(j - k))];
  return sample;
}

std::vector<double> build_embedding(const GaussianSequence& a) {
  const int n = a.n;
  std::vector<double> b(std::size_t(2 * n));
  b[0] = kSqrt2 * a.a[0];
  b[std::size_t(n)] = kSqrt2 * a.a[std::size_t(n)];
  for (int j = 1; j < n; ++j) {
    b[std::size_t(j)] = a.a[std::size_t(j)];
    b[std::size_t(2 * n - j)] = a.a[std::size_t(j)];
  }
  return b;
}

Eigen::MatrixXd build_circulant(std::span<const double> b) {
  require_even_length(b.size());
  const int m = int(b.size());
  Eigen::MatrixXd c(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) c(i, j) = b[std::size_t(((j - i) % m + m) % m)];
  return c;
}

std::vector<double> compute_d(std::span<const double> b) {
  require_even_length(b.size());
  const std::size_t m = b.size();
  const auto spectrum = fft::dft_plus_real(b);
  const double scale = 1.0 / std::sqrt(double(m));
  std::vector<double> d(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (std::abs(spectrum[j].imag()) * scale > 1e-10)
      throw std::runtime_error("compute_d: non-real DFT of symmetric b at index " +
                               std::to_string(j));
    d[j] = spectrum[j].real() * scale;
  }
  return d;
}

Eigen::MatrixXcd dft_matrix(int m) {
  if (m < 1) throw std::invalid_argument("dft_matrix: m must be >= 1");
  Eigen::MatrixXcd u(m, m);
  const double norm = 1.0 / std::sqrt(double(m));
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      // exp(2*pi*i*(j*k mod m)/m); reducing the phase keeps accuracy at large m.
      const long long t = (static_cast<long long>(j) * k) % m;
      const double angle = 2.0 * std::numbers::pi * double(t) / double(m);
      u(j, k) = norm * std::complex<double>(std::cos(angle), std::sin(angle));
    }
  return u;
}

Eigen::MatrixXcd build_projection(int n) {
  if (n < 1) throw std::invalid_argument("build_projection: n must be >= 1");
  const int m = 2 * n;
  // P(j,k) depends on t = (k-j) mod 2n only:
  //   p_0 = 1/2, p_t = 0 for even t != 0,
  //   p_t = 1/(n (1 - exp(i*pi*t/n))) for odd t.
  std::vector<std::complex<double>> p(static_cast<std::size_t>(m));
  p[0] = {0.5, 0.0};
  for (int t = 1; t < m; ++t) {
    if (t % 2 == 0) {
      p[std::size_t(t)] = {0.0, 0.0};
    } else {
      const double angle = std::numbers::pi * double(t) / double(n);
      const std::complex<double> den =
          1.0 - std::complex<double>(std::cos(angle), std::sin(angle));
      p[std::size_t(t)] = 1.0 / (double(n) * den);
    }
  }
  Eigen::MatrixXcd proj(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) proj(j, k) = p[std::size_t(((k - j) % m + m) % m)];
  return proj;
}

Eigen::VectorXcd apply_projection(int n, const Eigen::VectorXcd& x) {
  if (x.size() != 2 * Eigen::Index(n))
    throw std::invalid_argument("apply_projection: vector must have length 2n");
  const std::size_t m = std::size_t(2 * n);
  // P = U* Q U: unitary DFT, truncate to the first n coordinates, undo.
  std::vector<std::complex<double>> buf(x.data(), x.data() + m);
  auto fwd = fft::dft_plus(buf);  // sqrt(m) * (U x)
  std::fill(fwd.begin() + n, fwd.end(), std::complex<double>{0.0, 0.0});
  auto back = fft::dft_minus(fwd);  // sqrt(m) * m * (U* Q U x) after both passes
  Eigen::VectorXcd out(2 * n);
  for (std::size_t i = 0; i < m; ++i) out[Eigen::Index(i)] = back[i] / double(m);
  return out;
}

CirculantSystem build_system(const GaussianSequence& a) {
  CirculantSystem system;
  system.n = a.n;
  system.b = build_embedding(a);
  system.d = compute_d(system.b);
  system.P = build_projection(a.n);
  return system;
}

Eigen::MatrixXcd build_pdp(const CirculantSystem& system) {
  const int m = 2 * system.n;
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(system.d.data(), m);
  return system.P * d.asDiagonal() * system.P;
}

std::vector<double> circulant_matvec(std::span<const double> b, std::span<const double> x) {
  require_even_length(b.size());
  if (b.size() != x.size())
    throw std::invalid_argument("circulant_matvec: length mismatch");
  const std::size_t m = b.size();
  // C = U diag(spec) U* with spec = dft_plus(b): carry x through the two
  // transforms and scale once by 1/m.
  const auto spec = fft::dft_plus_real(b);
  std::vector<std::complex<double>> xs(m);
  for (std::size_t i = 0; i < m; ++i) xs[i] = x[i];
  auto fx = fft::dft_minus(xs);
  for (std::size_t i = 0; i < m; ++i) fx[i] *= spec[i];
  auto y = fft::dft_plus(fx);
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = y[i].real() / double(m);
  return out;
}

std::vector<double> toeplitz_matvec(const ToeplitzSample& sample, std::span<const double> x) {
  const int n = sample.n;
  if (x.size() != std::size_t(n))
    throw std::invalid_argument("toeplitz_matvec: length mismatch");
  const auto b = build_embedding(sample.coeffs);
  std::vector<double> padded(std::size_t(2 * n), 0.0);
  std::copy(x.begin(), x.end(), padded.begin());
  const auto full = circulant_matvec(b, padded);
  std::vector<double> out(full.begin(), full.begin() + n);
  if (!sample.modified) {
    // T = T_mod - (sqrt(2)-1) a_0 I on the diagonal.
    const double shift = (kSqrt2 - 1.0) * sample.coeffs.a[0];
    for (int i = 0; i < n; ++i) out[std::size_t(i)] -= shift * x[std::size_t(i)];
  }
  return out;
}

Eigen::MatrixXd build_hankel(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("build_hankel: n must be >= 1");
  const GaussianSequence seq = sample_gaussian(std::max(2 * n - 2, 1), seed);
  Eigen::MatrixXd h(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) h(j, k) = seq.a[std::size_t(j + k)];
  return h;
}

}  // namespace spectra
