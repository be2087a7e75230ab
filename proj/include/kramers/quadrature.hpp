#pragma once

#include <functional>

namespace kramers::quad {

/// Where the integrand concentrates on [a, b]. Panels are graded
/// dyadically toward the marked end(s).
enum class Peak { none, left, right, both };

struct Options {
  double rel_tol = 1e-13;
  int max_refinements = 10;
};

/// Returns log(∫_a^b exp(log_f(x)) dx) using composite 20-point
/// Gauss-Legendre on graded panels, doubling the panel count until two
/// successive estimates agree to rel_tol. Summation is shifted by the
/// largest sampled exponent, so exp(log_f) may lie far outside the double
/// range. Throws NumericalError if the estimates do not settle.
double log_integrate(const std::function<double(double)>& log_f, double a, double b,
                     Peak peak, const Options& opts = {});

/// Plain-value convenience wrapper around log_integrate for f > 0.
double integrate_positive(const std::function<double(double)>& f, double a, double b,
                          Peak peak, const Options& opts = {});

/// Single 20-point Gauss-Legendre panel on [a, b]; no error control.
double gauss_legendre_panel(const std::function<double(double)>& f, double a, double b);

/// log(exp(x) + exp(y)) without overflow.
double log_add(double x, double y);

} // namespace kramers::quad
