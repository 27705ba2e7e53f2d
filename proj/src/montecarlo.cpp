#include "spectra/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "spectra/ensemble.hpp"
#include "spectra/linalg.hpp"
#include "spectra/parallel.hpp"
#include "spectra/rng.hpp"

namespace spectra {
namespace {

void require_config(const McConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("montecarlo: n must be >= 1");
  if (cfg.samples < 1) throw std::invalid_argument("montecarlo: samples must be >= 1");
  if (cfg.z_grid.empty()) throw std::invalid_argument("montecarlo: empty z grid");
}

// Scaled spectrum of sample `s`: eigenvalues of T_mod/sqrt(n) (or of the
// Hankel draw), ascending. Seeded per sample, so the set is identical for
// any thread count.
Eigen::VectorXd sample_spectrum(EnsembleKind kind, int n, std::uint64_t master_seed,
                                std::uint64_t sample_index) {
  const std::uint64_t seed = rng::derive_seed(master_seed, sample_index);
  Eigen::MatrixXd matrix = (kind == EnsembleKind::Toeplitz)
                               ? build_toeplitz(sample_gaussian(n, seed), true).matrix
                               : build_hankel(n, seed);
  return eigenvalues_symmetric(matrix) / std::sqrt(double(n));
}

struct MeanStderr {
  double mean = 0.0;
  double se = 0.0;
};

// Two-pass mean/standard error over the sample axis; summation order is
// fixed by the sample index.
MeanStderr reduce(const std::vector<double>& values) {
  const std::size_t s = values.size();
  MeanStderr out;
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / double(s);
  if (s > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.se = std::sqrt(ss / double(s - 1) / double(s));
  }
  return out;
}

std::vector<ZStatistic> reduce_grid(const std::vector<HalfPlanePoint>& grid,
                                    const std::vector<std::vector<std::complex<double>>>& per_sample) {
  const std::size_t nz = grid.size();
  const std::size_t s = per_sample.size();
  std::vector<ZStatistic> stats(nz);
  std::vector<double> re(s), im(s);
  for (std::size_t zi = 0; zi < nz; ++zi) {
    for (std::size_t k = 0; k < s; ++k) {
      re[k] = per_sample[k][zi].real();
      im[k] = per_sample[k][zi].imag();
    }
    const MeanStderr mre = reduce(re);
    const MeanStderr mim = reduce(im);
    stats[zi].energy = grid[zi].re;
    stats[zi].im = grid[zi].im;
    stats[zi].mean = {mre.mean, mim.mean};
    stats[zi].stderr_re = mre.se;
    stats[zi].stderr_im = mim.se;
  }
  return stats;
}

double silverman_bandwidth(const std::vector<Eigen::VectorXd>& spectra) {
  double sum = 0.0, sum_sq = 0.0;
  std::size_t count = 0;
  for (const auto& v : spectra) {
    sum += v.sum();
    sum_sq += v.squaredNorm();
    count += std::size_t(v.size());
  }
  const double mean = sum / double(count);
  const double var = sum_sq / double(count) - mean * mean;
  return 0.9 * std::sqrt(std::max(var, 0.0)) * std::pow(double(count), -0.2);
}

}  // namespace

std::vector<HalfPlanePoint> key_bound_grid() {
  std::vector<HalfPlanePoint> grid;
  for (double im : {0.2, 0.05, 0.01})
    for (int k = 0; k <= 48; ++k) grid.emplace_back(-6.0 + 0.25 * k, im);
  return grid;
}

StieltjesEstimate expected_stieltjes(const McConfig& cfg, StieltjesSide side) {
  require_config(cfg);
  const std::size_t s = std::size_t(cfg.samples);
  const std::size_t nz = cfg.z_grid.size();
  const bool want_left = side != StieltjesSide::Right;
  const bool want_right = side != StieltjesSide::Left;

  std::vector<std::vector<std::complex<double>>> left(want_left ? s : 0);
  std::vector<std::vector<std::complex<double>>> right(want_right ? s : 0);

  parallel_for(s, cfg.threads, [&](std::size_t k) {
    const std::uint64_t seed = rng::derive_seed(cfg.seed, k);
    const GaussianSequence a = sample_gaussian(cfg.n, seed);
    if (want_left) {
      const Eigen::VectorXd eigs =
          eigenvalues_symmetric(build_toeplitz(a, true).matrix) / std::sqrt(double(cfg.n));
      auto& row = left[k];
      row.resize(nz);
      for (std::size_t zi = 0; zi < nz; ++zi) {
        const std::complex<double> z = cfg.z_grid[zi].value();
        std::complex<double> acc{0.0, 0.0};
        for (Eigen::Index i = 0; i < eigs.size(); ++i) acc += 1.0 / (eigs[i] - z);
        row[zi] = acc / double(cfg.n);
      }
    }
    if (want_right) {
      const CirculantSystem system = build_system(a);
      const Eigen::MatrixXcd pdp = build_pdp(system);
      const HermitianEigen eig = eigensolve_hermitian(pdp, /*with_vectors=*/true);
      const Eigen::MatrixXcd pv = system.P * eig.vectors;
      const int m = 2 * cfg.n;
      Eigen::VectorXd weights(m);
      for (int j = 0; j < m; ++j) weights[j] = eig.vectors.col(j).dot(pv.col(j)).real();
      auto& row = right[k];
      row.resize(nz);
      for (std::size_t zi = 0; zi < nz; ++zi) {
        const std::complex<double> z = cfg.z_grid[zi].value();
        std::complex<double> acc{0.0, 0.0};
        // Resolvent of the conjugated operator sqrt(2) PDP, per the Eq.-(2)
        // change of basis applied to n^{-1/2} Q C Q.
        for (int j = 0; j < m; ++j)
          acc += weights[j] / (std::numbers::sqrt2 * eig.values[j] - z);
        row[zi] = acc / double(cfg.n);
      }
    }
  });

  StieltjesEstimate out;
  if (want_left) out.left = reduce_grid(cfg.z_grid, left);
  if (want_right) out.right = reduce_grid(cfg.z_grid, right);
  if (side == StieltjesSide::Both) {
    double gap = 0.0;
    for (std::size_t k = 0; k < s; ++k)
      for (std::size_t zi = 0; zi < nz; ++zi)
        gap = std::max(gap, std::abs(left[k][zi] - right[k][zi]));
    out.max_identity_gap = gap;
  }
  return out;
}

KeyBoundReport check_key_bound(const McConfig& cfg) {
  McConfig local = cfg;
  if (local.z_grid.empty()) local.z_grid = key_bound_grid();
  const StieltjesEstimate est = expected_stieltjes(local, StieltjesSide::Left);
  KeyBoundReport report;
  report.stats = est.left;
  for (const auto& st : report.stats) {
    const double se = std::sqrt(st.stderr_re * st.stderr_re + st.stderr_im * st.stderr_im);
    report.max_value = std::max(report.max_value, std::abs(st.mean) + 3.0 * se);
  }
  report.passed = report.max_value <= report.bound;
  return report;
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 2 || !(hi > lo)) throw std::invalid_argument("uniform_grid: bad range");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double step = (hi - lo) / double(points - 1);
  for (int i = 0; i < points; ++i) grid[std::size_t(i)] = lo + step * i;
  return grid;
}

DensityEstimate estimate_density(EnsembleKind kind, int n, int samples, std::uint64_t seed,
                                 std::vector<double> grid, std::optional<double> bandwidth,
                                 int threads, int bootstrap_resamples) {
  if (n < 1) throw std::invalid_argument("estimate_density: n must be >= 1");
  if (samples < 1) throw std::invalid_argument("estimate_density: samples must be >= 1");
  if (grid.size() < 2) throw std::invalid_argument("estimate_density: grid too small");
  if (bandwidth && !(*bandwidth > 0.0))
    throw std::invalid_argument("estimate_density: bandwidth must be > 0");
  if (bootstrap_resamples < 50)
    throw std::invalid_argument("estimate_density: need >= 50 bootstrap resamples");

  const std::size_t s = std::size_t(samples);
  std::vector<Eigen::VectorXd> spectra(s);
  parallel_for(s, threads, [&](std::size_t k) {
    spectra[k] = sample_spectrum(kind, n, seed, k);
  });

  double h = bandwidth.value_or(silverman_bandwidth(spectra));
  if (!(h > 0.0)) throw std::invalid_argument("estimate_density: bandwidth must be > 0");

  // Per-sample KDE curves; the pooled estimate is their mean since every
  // sample contributes the same number of eigenvalues.
  const std::size_t g = grid.size();
  std::vector<std::vector<double>> curves(s);
  const double inv_hn = 1.0 / (h * double(n));
  const double scale = inv_hn / std::sqrt(2.0 * std::numbers::pi);
  parallel_for(s, threads, [&](std::size_t k) {
    auto& curve = curves[k];
    curve.assign(g, 0.0);
    const Eigen::VectorXd& eigs = spectra[k];
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
      const double x = eigs[i];
      for (std::size_t j = 0; j < g; ++j) {
        const double t = (grid[j] - x) / h;
        curve[j] += std::exp(-0.5 * t * t);
      }
    }
    for (std::size_t j = 0; j < g; ++j) curve[j] *= scale;
  });

  DensityEstimate out;
  out.grid = std::move(grid);
  out.bandwidth = h;
  out.n = n;
  out.samples = samples;
  out.values.assign(g, 0.0);
  for (std::size_t k = 0; k < s; ++k)
    for (std::size_t j = 0; j < g; ++j) out.values[j] += curves[k][j];
  for (std::size_t j = 0; j < g; ++j) out.values[j] /= double(s);

  // Bootstrap over the sample axis.
  const std::size_t b_count = std::size_t(bootstrap_resamples);
  std::vector<double> boot_mean(g, 0.0), boot_sq(g, 0.0);
  std::vector<double> boot_curve(g);
  for (std::size_t b = 0; b < b_count; ++b) {
    std::fill(boot_curve.begin(), boot_curve.end(), 0.0);
    for (std::size_t i = 0; i < s; ++i) {
      const std::size_t pick =
          std::size_t(rng::bits64(seed, rng::stream::kBootstrap, b * s + i) % s);
      for (std::size_t j = 0; j < g; ++j) boot_curve[j] += curves[pick][j];
    }
    for (std::size_t j = 0; j < g; ++j) {
      const double v = boot_curve[j] / double(s);
      boot_mean[j] += v;
      boot_sq[j] += v * v;
    }
  }
  out.ci_halfwidth.assign(g, 0.0);
  for (std::size_t j = 0; j < g; ++j) {
    const double mean = boot_mean[j] / double(b_count);
    const double var =
        std::max(0.0, (boot_sq[j] / double(b_count) - mean * mean) * double(b_count) /
                          double(b_count - 1));
    out.ci_halfwidth[j] = 1.96 * std::sqrt(var);
  }

  // The estimate must account for (essentially) all mass: a grid that
  // misses the spectrum is a caller error.
  double integral = 0.0;
  for (std::size_t j = 0; j + 1 < g; ++j)
    integral += 0.5 * (out.values[j] + out.values[j + 1]) * (out.grid[j + 1] - out.grid[j]);
  if (!(integral >= 0.99 && integral <= 1.01))
    throw std::runtime_error("estimate_density: grid integral " + std::to_string(integral) +
                             " outside [0.99, 1.01]; widen the grid");
  return out;
}

DensityEstimate estimate_gamma_density(int n, int samples, std::uint64_t seed,
                                       std::vector<double> grid, std::optional<double> bandwidth,
                                       int threads, int bootstrap_resamples) {
  return estimate_density(EnsembleKind::Toeplitz, n, samples, seed, std::move(grid), bandwidth,
                          threads, bootstrap_resamples);
}

DensityEstimate hankel_density_explore(int n, int samples, std::uint64_t seed,
                                       std::vector<double> grid, std::optional<double> bandwidth,
                                       int threads, int bootstrap_resamples) {
  return estimate_density(EnsembleKind::Hankel, n, samples, seed, std::move(grid), bandwidth,
                          threads, bootstrap_resamples);
}

std::vector<MomentEstimate> moment_diagnostics(int n, int samples, std::uint64_t seed,
                                               int max_order, int threads) {
  if (n < 1 || samples < 1) throw std::invalid_argument("moment_diagnostics: bad n or samples");
  if (max_order < 1) throw std::invalid_argument("moment_diagnostics: max_order must be >= 1");
  const std::size_t s = std::size_t(samples);
  std::vector<std::vector<double>> per_sample(s);
  parallel_for(s, threads, [&](std::size_t k) {
    const Eigen::VectorXd eigs = sample_spectrum(EnsembleKind::Toeplitz, n, seed, k);
    auto& moments = per_sample[k];
    moments.assign(std::size_t(max_order), 0.0);
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
      double p = 1.0;
      for (int order = 1; order <= max_order; ++order) {
        p *= eigs[i];
        moments[std::size_t(order - 1)] += p;
      }
    }
    for (auto& m : moments) m /= double(n);
  });

  std::vector<MomentEstimate> out(static_cast<std::size_t>(max_order));
  std::vector<double> column(s);
  for (int order = 1; order <= max_order; ++order) {
    for (std::size_t k = 0; k < s; ++k) column[k] = per_sample[k][std::size_t(order - 1)];
    const MeanStderr m = reduce(column);
    out[std::size_t(order - 1)] = {order, m.mean, m.se};
  }
  return out;
}

double exact_second_moment(int n) {
  if (n < 1) throw std::invalid_argument("exact_second_moment: n must be >= 1");
  return 1.0 + 1.0 / double(n);
}

double exact_fourth_moment(int n, int threads) {
  if (n < 1) throw std::invalid_argument("exact_fourth_moment: n must be >= 1");
  // E tr((T/sqrt n)^4)/n = n^{-3} sum over closed 4-walks of the Wick
  // pairing sum; entries covary iff their index offsets agree, diagonal
  // entries carry weight sqrt(2).
  const auto offset = [](int a, int b) { return a < b ? b - a : a - b; };
  const auto weight = [](int d) { return d == 0 ? std::numbers::sqrt2 : 1.0; };
  std::vector<double> partial(std::size_t(n), 0.0);
  parallel_for(std::size_t(n), threads, [&](std::size_t iu) {
    const int i = int(iu);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const int d1 = offset(i, j);
      const double w1 = weight(d1);
      for (int k = 0; k < n; ++k) {
        const int d2 = offset(j, k);
        const double w2 = weight(d2);
        const double c12 = (d1 == d2) ? w1 * w2 : 0.0;
        for (int l = 0; l < n; ++l) {
          const int d3 = offset(k, l);
          const int d4 = offset(l, i);
          const double w3 = weight(d3);
          const double w4 = weight(d4);
          const double c34 = (d3 == d4) ? w3 * w4 : 0.0;
          const double c13 = (d1 == d3) ? w1 * w3 : 0.0;
          const double c24 = (d2 == d4) ? w2 * w4 : 0.0;
          const double c14 = (d1 == d4) ? w1 * w4 : 0.0;
          const double c23 = (d2 == d3) ? w2 * w3 : 0.0;
          acc += c12 * c34 + c13 * c24 + c14 * c23;
        }
      }
    }
    partial[iu] = acc;
  });
  const double total = std::accumulate(partial.begin(), partial.end(), 0.0);
  return total / (double(n) * double(n) * double(n));
}

}  // namespace spectra
