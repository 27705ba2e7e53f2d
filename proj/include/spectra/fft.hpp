#pragma once

#include <complex>
#include <span>
#include <vector>

namespace spectra::fft {

// Unnormalized DFT with kernel exp(+2*pi*i*j*k/N). This is the convention
// every diagonalization identity in this library is written in; the
// matching unitary map is dft_plus(x)/sqrt(N).
std::vector<std::complex<double>> dft_plus(std::span<const std::complex<double>> in);

// Unnormalized DFT with kernel exp(-2*pi*i*j*k/N).
std::vector<std::complex<double>> dft_minus(std::span<const std::complex<double>> in);

std::vector<std::complex<double>> dft_plus_real(std::span<const double> in);

}  // namespace spectra::fft
