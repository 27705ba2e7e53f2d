#include "spectra/wegner.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spectra {
namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

void require_quadrature(const WegnerQuadrature& quad) {
  if (!(quad.half_width_sds >= 8.0))
    throw std::invalid_argument("wegner quadrature: half width must be >= 8 standard deviations");
  if (quad.min_nodes < 2000)
    throw std::invalid_argument("wegner quadrature: need at least 2000 nodes");
}

// Shifted system M = H(lambda) - E + i delta + i eps Hdot, factored once.
Eigen::PartialPivLU<Eigen::MatrixXcd> factor_shifted(const WegnerFamily& fam, double lambda,
                                                     double eps, double delta, double energy) {
  Eigen::MatrixXcd m = fam.h(lambda);
  m.diagonal().array() += std::complex<double>(-energy, delta);
  if (eps != 0.0) m += std::complex<double>(0.0, eps) * fam.hdot;
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(std::move(m));
}

double gaussian_tail_bound(const WegnerFamily& fam, double delta, double half_width_sds) {
  // |<phi, K phi>| <= ||B||^2 / delta and the Gaussian tail mass beyond
  // L sds is < exp(-L^2/2); both crude, and still far below any tolerance.
  const double tail_mass = std::exp(-0.5 * half_width_sds * half_width_sds);
  const double bnorm = fam.b_op.norm();
  return 2.0 * tail_mass * bnorm * bnorm / std::max(delta, 1e-12);
}

FValue integrate_family(const WegnerFamily& fam, double eps, double delta, double energy,
                        const WegnerQuadrature& quad,
                        const std::function<double(double)>& weight, bool double_resolvent) {
  require_quadrature(quad);
  if (!(delta > 0.0)) throw std::invalid_argument("wegner: delta must be > 0");
  if (eps < 0.0) throw std::invalid_argument("wegner: eps must be >= 0");
  const Eigen::VectorXcd psi = fam.b_op * fam.phi;
  const double half_width = quad.half_width_sds * fam.g.scale;
  const int initial_panels = std::max(quad.min_nodes / 15 + 1, 64);

  const auto integrand = [&](double lambda) -> std::complex<double> {
    const auto lu = factor_shifted(fam, lambda, eps, delta, energy);
    const Eigen::VectorXcd y = lu.solve(psi);
    if (!double_resolvent) return weight(lambda) * psi.dot(y);
    const Eigen::VectorXcd y2 = lu.solve(Eigen::VectorXcd(fam.hdot * y));
    return weight(lambda) * psi.dot(y2);
  };

  const QuadratureResult res = integrate_adaptive(integrand, -half_width, half_width,
                                                  quad.abs_tol, initial_panels, quad.max_panels);
  FValue out;
  out.value = res.value;
  out.quad_error = res.abs_error + gaussian_tail_bound(fam, delta, quad.half_width_sds);
  return out;
}

BoundCheck make_check(std::string id, double eps, double delta, double energy, double lhs,
                      double rhs_with_slack) {
  BoundCheck c;
  c.id = std::move(id);
  c.eps = eps;
  c.delta = delta;
  c.energy = energy;
  c.lhs = lhs;
  c.rhs = rhs_with_slack;
  c.margin = rhs_with_slack - lhs;
  c.passed = lhs <= rhs_with_slack;
  return c;
}

}  // namespace

double GaussianDensity::operator()(double x) const {
  const double t = x / scale;
  return kInvSqrt2Pi / scale * std::exp(-0.5 * t * t);
}

double GaussianDensity::derivative(double x) const {
  return -(x / (scale * scale)) * (*this)(x);
}

double GaussianDensity::second_derivative(double x) const {
  const double s2 = scale * scale;
  return ((x * x / s2 - 1.0) / s2) * (*this)(x);
}

std::array<double, 3> gaussian_norms(double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("gaussian_norms: scale must be > 0");
  GaussianDensity g;
  g.scale = scale;
  const double L = 12.0 * scale;
  // Split at the sign changes: g' flips at 0, g'' flips at +-scale. Each
  // piece is smooth, so the panels converge fast.
  const auto piecewise_abs = [&](const std::function<double(double)>& f,
                                 std::span<const double> cuts) {
    double total = 0.0;
    double lo = -L;
    for (double cut : cuts) {
      total += std::abs(integrate_adaptive_real(f, lo, cut, 1e-12, 64, 20000));
      lo = cut;
    }
    total += std::abs(integrate_adaptive_real(f, lo, L, 1e-12, 64, 20000));
    return total;
  };

  const std::array<double, 1> zero_cut{0.0};
  const std::array<double, 2> scale_cuts{-scale, scale};
  const double n0 = integrate_adaptive_real([&](double x) { return g(x); }, -L, L, 1e-12, 64, 20000);
  const double n1 = piecewise_abs([&](double x) { return g.derivative(x); }, zero_cut);
  const double n2 = piecewise_abs([&](double x) { return g.second_derivative(x); }, scale_cuts);
  return {n0, n1, n2};
}

GaussianDensity make_gaussian_density(double scale) {
  GaussianDensity g;
  g.scale = scale;
  const auto norms = gaussian_norms(scale);
  g.norm_g = norms[0];
  g.norm_g1 = norms[1];
  g.norm_g2 = norms[2];
  if (std::abs(g.norm_g - 1.0) > 1e-10)
    throw std::runtime_error("gaussian density: ||g||_1 deviates from 1");
  if (g.norm_g1 > std::sqrt(2.0 / std::numbers::pi) + 1e-10)
    throw std::runtime_error("gaussian density: ||g'||_1 exceeds sqrt(2/pi)");
  if (g.norm_g2 > 2.0)
    throw std::runtime_error("gaussian density: ||g''||_1 exceeds 2");
  return g;
}

WegnerFamily build_family(const CirculantSystem& system, int j, BVariant variant,
                          const Eigen::VectorXcd& phi) {
  const int n = system.n;
  const int m = 2 * n;
  if (j < 0 || j > n) throw std::invalid_argument("build_family: j must lie in [0, n]");
  if (phi.size() != m) throw std::invalid_argument("build_family: phi must have length 2n");
  const double phi_norm = phi.norm();
  if (!(phi_norm > 0.0)) throw std::invalid_argument("build_family: phi must be nonzero");
  const bool degenerate = (j == 0 || j == n);
  if (degenerate && variant == BVariant::High)
    throw std::invalid_argument("build_family: j in {0, n} has a single B variant");

  WegnerFamily fam;
  fam.dim = m;
  fam.j = j;
  fam.coupling_center = system.d[std::size_t(j)];
  fam.c0 = 2.0;
  fam.base = build_pdp(system);
  const Eigen::VectorXcd pj = system.P.col(j);
  fam.hdot = pj * pj.adjoint();
  if (!degenerate) {
    const Eigen::VectorXcd pm = system.P.col(2 * n - j);
    fam.hdot += pm * pm.adjoint();
    fam.b_op = (variant == BVariant::Low) ? Eigen::MatrixXcd(pj * pj.adjoint())
                                          : Eigen::MatrixXcd(pm * pm.adjoint());
  } else {
    fam.b_op = pj * pj.adjoint();
  }
  fam.phi = phi / phi_norm;
  fam.g = make_gaussian_density(degenerate ? std::numbers::sqrt2 : 1.0);
  return fam;
}

WegnerFamily scalar_family() {
  WegnerFamily fam;
  fam.dim = 1;
  fam.j = -1;
  fam.coupling_center = 0.0;
  fam.c0 = 1.0;
  fam.base = Eigen::MatrixXcd::Zero(1, 1);
  fam.hdot = Eigen::MatrixXcd::Identity(1, 1);
  fam.b_op = Eigen::MatrixXcd::Identity(1, 1);
  fam.phi = Eigen::VectorXcd::Ones(1);
  fam.g = make_gaussian_density(1.0);
  return fam;
}

Eigen::MatrixXcd regularized_resolvent(const WegnerFamily& fam, double lambda, double eps,
                                       double delta, double energy) {
  if (!(delta > 0.0)) throw std::invalid_argument("regularized_resolvent: delta must be > 0");
  if (eps < 0.0) throw std::invalid_argument("regularized_resolvent: eps must be >= 0");
  return factor_shifted(fam, lambda, eps, delta, energy)
      .solve(Eigen::MatrixXcd::Identity(fam.dim, fam.dim));
}

Eigen::MatrixXcd kernel_K(const WegnerFamily& fam, double lambda, double eps, double delta,
                          double energy) {
  return fam.b_op * regularized_resolvent(fam, lambda, eps, delta, energy) * fam.b_op;
}

FValue compute_F(const WegnerFamily& fam, double eps, double delta, double energy,
                 const WegnerQuadrature& quad) {
  return integrate_family(fam, eps, delta, energy, quad,
                          [&fam](double x) { return fam.g(x); }, false);
}

FValue compute_F_tilde(const WegnerFamily& fam, double eps, double delta, double energy,
                       const WegnerQuadrature& quad) {
  return integrate_family(fam, eps, delta, energy, quad,
                          [&fam](double x) { return fam.g.derivative(x); }, false);
}

FValue compute_dF_deps_analytic(const WegnerFamily& fam, double eps, double delta, double energy,
                                const WegnerQuadrature& quad) {
  FValue inner = integrate_family(fam, eps, delta, energy, quad,
                                  [&fam](double x) { return fam.g(x); }, true);
  inner.value *= std::complex<double>(0.0, -1.0);
  return inner;
}

WegnerReport verify_apriori_bound(const WegnerFamily& fam, std::span<const double> lambda_grid,
                                  double eps, double delta, double energy) {
  if (!(delta > 0.0)) throw std::invalid_argument("verify_apriori_bound: delta must be > 0");
  if (eps < 0.0) throw std::invalid_argument("verify_apriori_bound: eps must be >= 0");
  WegnerReport report;
  const Eigen::VectorXcd psi = fam.b_op * fam.phi;  // phi is unit-norm
  for (double lambda : lambda_grid) {
    const auto lu = factor_shifted(fam, lambda, eps, delta, energy);
    const Eigen::VectorXcd y = lu.solve(psi);
    const Eigen::VectorXcd k_phi = fam.b_op * y;
    const double norm_k_phi = k_phi.norm();
    const double neg_im = -(psi.dot(y)).imag();
    const double quadratic = fam.c0 * eps * norm_k_phi * norm_k_phi;

    const double slack1 = 1e-9 * std::max({1.0, norm_k_phi, std::abs(neg_im)});
    BoundCheck c1 = make_check("eq8_cauchy_schwarz", eps, delta, energy, neg_im,
                               norm_k_phi + slack1);
    c1.lambda = lambda;
    const double slack2 = 1e-9 * std::max({1.0, std::abs(neg_im), quadratic});
    BoundCheck c2 = make_check("eq8_lower", eps, delta, energy, quadratic, neg_im + slack2);
    c2.lambda = lambda;
    report.all_passed = report.all_passed && c1.passed && c2.passed;
    report.checks.push_back(std::move(c1));
    report.checks.push_back(std::move(c2));
  }
  return report;
}

WegnerReport verify_F_bounds(const WegnerFamily& fam, std::span<const double> eps_ladder,
                             std::span<const double> deltas, std::span<const double> energies,
                             const WegnerQuadrature& quad) {
  for (std::size_t i = 0; i < eps_ladder.size(); ++i) {
    if (!(eps_ladder[i] > 0.0 && eps_ladder[i] <= 1.0))
      throw std::invalid_argument("verify_F_bounds: eps ladder must lie in (0, 1]");
    if (i > 0 && !(eps_ladder[i] < eps_ladder[i - 1]))
      throw std::invalid_argument("verify_F_bounds: eps ladder must be strictly decreasing");
  }
  WegnerReport report;
  const double inv_c0 = 1.0 / fam.c0;
  for (double energy : energies) {
    for (double delta : deltas) {
      for (double eps : eps_ladder) {
        const FValue f = compute_F(fam, eps, delta, energy, quad);
        const double abs_f = std::abs(f.value);

        const double rhs9 = inv_c0 / eps * fam.g.norm_g;
        report.checks.push_back(make_check("eq9_apriori", eps, delta, energy, abs_f,
                                           rhs9 * (1.0 + kBoundSlack) + f.quad_error));

        const double h = std::min(eps / 10.0, 1e-3);
        const FValue f_hi = compute_F(fam, eps + h, delta, energy, quad);
        const FValue f_lo = compute_F(fam, eps - h, delta, energy, quad);
        const double d_f = std::abs(f_hi.value - f_lo.value) / (2.0 * h);
        const double fd_budget = (f_hi.quad_error + f_lo.quad_error) / (2.0 * h);
        const double rhs10 = inv_c0 / eps * fam.g.norm_g1;
        report.checks.push_back(make_check("eq10_derivative", eps, delta, energy, d_f,
                                           rhs10 * (1.0 + kBoundSlack) + fd_budget));

        const double rhs11 = inv_c0 * (fam.g.norm_g1 * std::abs(std::log(eps)) + fam.g.norm_g);
        report.checks.push_back(make_check("eq11_log", eps, delta, energy, abs_f,
                                           rhs11 * (1.0 + kBoundSlack) + f.quad_error));

        const double rhs13 = inv_c0 * (fam.g.norm_g + fam.g.norm_g1 + fam.g.norm_g2);
        report.checks.push_back(make_check("eq13_uniform", eps, delta, energy, abs_f,
                                           rhs13 * (1.0 + kBoundSlack) + f.quad_error));
      }
    }
  }
  for (const auto& c : report.checks) report.all_passed = report.all_passed && c.passed;
  return report;
}

WegnerReport verify_spectral_averaging(const WegnerFamily& fam, std::span<const double> energies,
                                       std::span<const double> deltas,
                                       const WegnerQuadrature& quad) {
  require_quadrature(quad);
  WegnerReport report;
  const double rhs = (fam.g.norm_g + fam.g.norm_g1 + fam.g.norm_g2) / fam.c0;
  const Eigen::VectorXcd psi = fam.b_op * fam.phi;
  const double half_width = quad.half_width_sds * fam.g.scale;
  const int initial_panels = std::max(quad.min_nodes / 15 + 1, 64);
  for (double energy : energies) {
    for (double delta : deltas) {
      if (!(delta > 0.0))
        throw std::invalid_argument("verify_spectral_averaging: delta must be > 0");
      const auto integrand = [&](double lambda) -> std::complex<double> {
        Eigen::MatrixXcd m = fam.h(lambda);
        m.diagonal().array() += std::complex<double>(-energy, -delta);
        const Eigen::VectorXcd y = Eigen::PartialPivLU<Eigen::MatrixXcd>(std::move(m)).solve(psi);
        return fam.g(lambda) * psi.dot(y);
      };
      const QuadratureResult res = integrate_adaptive(integrand, -half_width, half_width,
                                                      quad.abs_tol, initial_panels,
                                                      quad.max_panels);
      const double budget = res.abs_error + gaussian_tail_bound(fam, delta, quad.half_width_sds);
      report.checks.push_back(make_check("eq5_spectral_averaging", 0.0, delta, energy,
                                         std::abs(res.value),
                                         rhs * (1.0 + kBoundSlack) + budget));
    }
  }
  for (const auto& c : report.checks) report.all_passed = report.all_passed && c.passed;
  return report;
}

}  // namespace spectra
