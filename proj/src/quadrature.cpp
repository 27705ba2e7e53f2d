#include "spectra/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

namespace spectra {
namespace {

// Gauss-Kronrod 15-point nodes and weights on [-1, 1] (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
  std::complex<double> kronrod{0.0, 0.0};
  double error = 0.0;
};

PanelEstimate gk15(const std::function<std::complex<double>(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::complex<double> fv[15];
  // index layout: 0..6 -> -x_0..-x_6, 7 -> center, 8..14 -> +x_6..+x_0
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(center - half * kXgk[i]);
    fv[14 - i] = f(center + half * kXgk[i]);
  }
  fv[7] = f(center);

  std::complex<double> kron{0.0, 0.0};
  for (int i = 0; i < 7; ++i) kron += kWgk[i] * (fv[i] + fv[14 - i]);
  kron += kWgk[7] * fv[7];

  // Gauss-7 uses the odd-index Kronrod nodes (x_1, x_3, x_5) plus center.
  std::complex<double> gauss{0.0, 0.0};
  gauss += kWg[0] * (fv[1] + fv[13]);
  gauss += kWg[1] * (fv[3] + fv[11]);
  gauss += kWg[2] * (fv[5] + fv[9]);
  gauss += kWg[3] * fv[7];

  PanelEstimate est;
  est.kronrod = kron * half;
  const std::complex<double> diff = (kron - gauss) * half;
  est.error = std::abs(diff);
  return est;
}

struct Panel {
  double a, b;
  PanelEstimate est;
  std::size_t id;  // creation order, ties broken deterministically
};

struct PanelWorse {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    if (lhs.est.error != rhs.est.error) return lhs.est.error < rhs.est.error;
    return lhs.id > rhs.id;
  }
};

}  // namespace

QuadratureResult integrate_adaptive(const std::function<std::complex<double>(double)>& f,
                                    double a, double b, double abs_tol, int initial_panels,
                                    int max_panels) {
  if (!(b > a)) throw std::invalid_argument("integrate_adaptive: require b > a");
  if (initial_panels < 1) initial_panels = 1;

  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> queue;
  std::size_t next_id = 0;
  std::size_t evals = 0;
  double err_sum = 0.0;
  const double width = (b - a) / initial_panels;
  for (int i = 0; i < initial_panels; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == initial_panels) ? b : a + (i + 1) * width;
    Panel panel{lo, hi, gk15(f, lo, hi), next_id++};
    err_sum += panel.est.error;
    queue.push(panel);
    evals += 15;
  }

  double prev_err = err_sum;
  int panels = initial_panels;
  while (err_sum > abs_tol && panels < max_panels) {
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left{worst.a, mid, gk15(f, worst.a, mid), next_id++};
    Panel right{mid, worst.b, gk15(f, mid, worst.b), next_id++};
    evals += 30;
    prev_err = err_sum;
    err_sum += left.est.error + right.est.error - worst.est.error;
    queue.push(left);
    queue.push(right);
    ++panels;
  }

  if (err_sum > abs_tol && err_sum > 100.0 * abs_tol)
    throw std::runtime_error("integrate_adaptive: refinement stalled, error estimates " +
                             std::to_string(prev_err) + " -> " + std::to_string(err_sum) +
                             " above tolerance " + std::to_string(abs_tol));

  // Re-sum panels for a roundoff-stable final value.
  std::complex<double> final_value{0.0, 0.0};
  double final_err = 0.0;
  while (!queue.empty()) {
    final_value += queue.top().est.kronrod;
    final_err += queue.top().est.error;
    queue.pop();
  }
  QuadratureResult out;
  out.value = final_value;
  out.abs_error = final_err;
  out.evaluations = evals;
  return out;
}

double integrate_adaptive_real(const std::function<double(double)>& f, double a, double b,
                               double abs_tol, int initial_panels, int max_panels) {
  const auto wrapped = [&f](double x) { return std::complex<double>(f(x), 0.0); };
  return integrate_adaptive(wrapped, a, b, abs_tol, initial_panels, max_panels).value.real();
}

}  // namespace spectra
