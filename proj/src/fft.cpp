#include "spectra/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace spectra::fft {
namespace {

// FFTW plan creation is not thread-safe; execution of an existing plan is.
// Plans are cached per (size, sign) and created with FFTW_ESTIMATE so the
// algorithm choice, and therefore the rounding, is deterministic.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    fftw_complex* in = fftw_alloc_complex(n);
    fftw_complex* out = fftw_alloc_complex(n);
    if (in == nullptr || out == nullptr) throw std::bad_alloc();
    fftw_plan plan =
        fftw_plan_dft_1d(int(n), in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) throw std::runtime_error("fftw plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  PlanCache() = default;
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

std::vector<std::complex<double>> run(std::span<const std::complex<double>> in, int sign) {
  if (in.empty()) throw std::invalid_argument("dft: empty input");
  std::vector<std::complex<double>> src(in.begin(), in.end());
  std::vector<std::complex<double>> dst(in.size());
  fftw_plan plan = PlanCache::instance().get(in.size(), sign);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(src.data()),
                   reinterpret_cast<fftw_complex*>(dst.data()));
  return dst;
}

}  // namespace

std::vector<std::complex<double>> dft_plus(std::span<const std::complex<double>> in) {
  return run(in, FFTW_BACKWARD);
}

std::vector<std::complex<double>> dft_minus(std::span<const std::complex<double>> in) {
  return run(in, FFTW_FORWARD);
}

std::vector<std::complex<double>> dft_plus_real(std::span<const double> in) {
  std::vector<std::complex<double>> tmp(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) tmp[i] = in[i];
  return dft_plus(tmp);
}

}  // namespace spectra::fft
