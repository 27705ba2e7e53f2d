#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace spectra {

struct QuadratureResult {
  std::complex<double> value{0.0, 0.0};
  double abs_error = 0.0;  // estimated
  std::size_t evaluations = 0;
};

// Adaptive Gauss-Kronrod (G7, K15) integration of a complex-valued function
// over [a, b]. Starts from `initial_panels` uniform panels (so resolvent
// peaks narrower than the panel width are still found) and bisects the
// worst panel until the summed error estimate drops below abs_tol or the
// panel budget is exhausted. Deterministic: refinement order depends only
// on the error values and creation order.
// Throws std::runtime_error (reporting the last two error-estimate
// iterates) if the budget is exhausted while the estimate is still above
// 100x abs_tol.
QuadratureResult integrate_adaptive(const std::function<std::complex<double>(double)>& f,
                                    double a, double b, double abs_tol,
                                    int initial_panels = 64, int max_panels = 40000);

double integrate_adaptive_real(const std::function<double(double)>& f, double a, double b,
                               double abs_tol, int initial_panels = 64, int max_panels = 40000);

}  // namespace spectra
