#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "spectra/quadrature.hpp"

using namespace spectra;

TEST_CASE("gauss-kronrod panel integrates polynomials to machine precision") {
  const auto quartic = [](double x) { return std::complex<double>(x * x * x * x, 0.0); };
  const auto res = integrate_adaptive(quartic, 0.0, 1.0, 1e-12, 1);
  CHECK(std::abs(res.value.real() - 0.2) <= 1e-14);
  CHECK(std::abs(res.value.imag()) <= 1e-16);
}

TEST_CASE("gaussian mass against the erf oracle") {
  const auto density = [](double x) {
    return std::complex<double>(std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi), 0.0);
  };
  const auto res = integrate_adaptive(density, -10.0, 10.0, 1e-12, 64);
  const double exact = oracles::normal_cdf(10.0) - oracles::normal_cdf(-10.0);
  CHECK(std::abs(res.value.real() - exact) <= 1e-12);
  CHECK(res.abs_error <= 1e-10);
}

TEST_CASE("sharp lorentzian needs adaptivity and gets it") {
  const double delta = 1e-3;
  const auto lorentz = [delta](double x) {
    return std::complex<double>(delta / (x * x + delta * delta), 0.0);
  };
  const auto res = integrate_adaptive(lorentz, -1.0, 1.0, 1e-10, 64);
  const double exact = 2.0 * std::atan(1.0 / delta);
  CHECK(std::abs(res.value.real() - exact) <= 1e-9);
}

TEST_CASE("complex integrand") {
  const auto wave = [](double x) { return std::exp(std::complex<double>(0.0, x)); };
  const auto res = integrate_adaptive(wave, 0.0, std::numbers::pi, 1e-12, 8);
  CHECK(std::abs(res.value - std::complex<double>(0.0, 2.0)) <= 1e-12);
}

TEST_CASE("stalled refinement reports the last error iterates") {
  // Integrable singularity at 0 with an impossible budget.
  const auto singular = [](double x) {
    return std::complex<double>(1.0 / std::sqrt(std::abs(x) + 1e-300), 0.0);
  };
  CHECK_THROWS_AS(integrate_adaptive(singular, -1.0, 1.0, 1e-14, 4, 8),
                  std::runtime_error);
}

TEST_CASE("offset panels cover uneven ranges") {
  const auto cube = [](double x) { return std::complex<double>(x * x * x, 0.0); };
  const auto res = integrate_adaptive(cube, -2.0, 5.0, 1e-12, 3);
  CHECK(std::abs(res.value.real() - (625.0 - 16.0) / 4.0) <= 1e-10);
}
