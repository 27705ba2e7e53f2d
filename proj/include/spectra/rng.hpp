#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace spectra::rng {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
// A block is a pure function of (key, counter), so any draw of any stream
// can be addressed directly. Monte Carlo runs stay reproducible no matter
// how samples are scheduled across threads.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static constexpr Counter block(Key key, Counter ctr) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
      const std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
      ctr = Counter{std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], std::uint32_t(p1),
                    std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1], std::uint32_t(p0)};
    }
    return ctr;
  }
};

// Stream tags. The high byte of the 64-bit stream id separates usage
// domains so that, e.g., bootstrap resampling never collides with
// coefficient draws under the same seed.
namespace stream {
inline constexpr std::uint64_t kCoefficients = 0;
inline constexpr std::uint64_t kBootstrap = std::uint64_t(1) << 56;
inline constexpr std::uint64_t kProbes = std::uint64_t(2) << 56;
inline constexpr std::uint64_t kDerive = std::uint64_t(3) << 56;
}  // namespace stream

// 64 random bits for draw `index` of stream `stream` under `seed`.
inline std::uint64_t bits64(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const Philox4x32::Key key{std::uint32_t(seed), std::uint32_t(seed >> 32)};
  const Philox4x32::Counter ctr{std::uint32_t(index), std::uint32_t(index >> 32),
                                std::uint32_t(stream), std::uint32_t(stream >> 32)};
  const auto out = Philox4x32::block(key, ctr);
  return (std::uint64_t(out[0]) << 32) | out[1];
}

// Uniform double strictly inside (0, 1).
inline double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const std::uint64_t u = bits64(seed, stream, index) >> 11;
  return (double(u) + 0.5) * 0x1.0p-53;
}

// Inverse standard normal CDF, Wichura's algorithm AS 241 (PPND16).
// Absolute accuracy is about 1e-15 over the full open interval.
inline double normal_icdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_icdf: p must lie in (0,1)");
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                 6.7265770927008700853e+4) *
                    r +
                4.5921953931549871457e+4) *
                   r +
               1.3731693765509461125e+4) *
                  r +
              1.9715909503065514427e+3) *
                 r +
             1.3314166789178437745e+2) *
                r +
            3.3871328727963666080e+0) /
           (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                 3.9307895800092710610e+4) *
                    r +
                2.1213794301586595867e+4) *
                   r +
               5.3941960214247511077e+3) *
                  r +
              6.8718700749205790830e+2) *
                 r +
             4.2313330701600911252e+1) *
                r +
            1.0);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) *
                     r +
                 1.27045825245236838258e+0) *
                    r +
                3.64784832476320460504e+0) *
                   r +
               5.76949722146069140550e+0) *
                  r +
              4.63033784615654529590e+0) *
                 r +
             1.42343711074968357734e+0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) *
                     r +
                 1.48103976427480074590e-1) *
                    r +
                6.89767334985100004550e-1) *
                   r +
               1.67638483018380384940e+0) *
                  r +
              2.05319162663775882187e+0) *
                 r +
             1.0);
  } else {
    r -= 5.0;
    value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) *
                     r +
                 2.65321895265761230930e-2) *
                    r +
                2.96560571828504891230e-1) *
                   r +
               1.78482653991729133580e+0) *
                  r +
              5.46378491116411436990e+0) *
                 r +
             6.65790464350110377720e+0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) *
                     r +
                 7.86869131145613259100e-4) *
                    r +
                1.48753612908506148525e-2) *
                   r +
               1.36929880922735805310e-1) *
                  r +
              5.99832206555887937690e-1) *
                 r +
             1.0);
  }
  return (q < 0.0) ? -value : value;
}

// Standard normal draw, addressable by (seed, stream, index).
inline double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return normal_icdf(uniform01(seed, stream, index));
}

// Derives an independent 64-bit subseed, e.g. one per Monte Carlo sample.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return bits64(seed, stream::kDerive, index);
}

}  // namespace spectra::rng
