#pragma once

// Test-only oracles, independent of the library code paths they check.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace oracles {

// Standard normal CDF through erfc.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Direct O(m^2) evaluation of d_j = m^{-1/2} sum_k b_k exp(2 pi i j k / m)
// through the cosine form (b symmetric), written out without any FFT.
inline std::vector<double> dft_diagonal_direct(std::span<const double> b) {
  const int m = int(b.size());
  const int n = m / 2;
  std::vector<double> d(b.size());
  for (int j = 0; j < m; ++j) {
    double acc = b[0] + ((j % 2 == 0) ? 1.0 : -1.0) * b[std::size_t(n)];
    for (int k = 1; k < n; ++k)
      acc += 2.0 * b[std::size_t(k)] * std::cos(2.0 * std::numbers::pi * double(j) * double(k) / double(m));
    d[std::size_t(j)] = acc / std::sqrt(double(m));
  }
  return d;
}

// Dense circulant multiply, no FFT.
inline std::vector<double> circulant_matvec_dense(std::span<const double> b,
                                                  std::span<const double> x) {
  const int m = int(b.size());
  std::vector<double> y(b.size(), 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) y[std::size_t(i)] += b[std::size_t(((j - i) % m + m) % m)] * x[std::size_t(j)];
  return y;
}

// Composite Simpson on a uniform grid; node count made odd internally.
inline std::complex<double> simpson(const std::function<std::complex<double>(double)>& f,
                                    double a, double b, int nodes) {
  if (nodes % 2 == 0) ++nodes;
  const int panels = nodes - 1;
  const double h = (b - a) / panels;
  std::complex<double> acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i) acc += f(a + h * i) * ((i % 2 == 1) ? 4.0 : 2.0);
  return acc * (h / 3.0);
}

inline double simpson_real(const std::function<double(double)>& f, double a, double b,
                           int nodes) {
  return simpson([&f](double x) { return std::complex<double>(f(x), 0.0); }, a, b, nodes).real();
}

}  // namespace oracles
