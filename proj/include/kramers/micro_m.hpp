#pragma once

#include <utility>
#include <vector>

namespace kramers {

/// Minimizer u(s) = A s² + B s + C of ½∫(w²/u + u'²/u) ds on [-κ, κ] with
/// u(±κ) = u±, and the minimal value M(w; u±).
struct MicroProfile {
  double w = 0.0;
  double um = 0.0;
  double up = 0.0;
  double kappa = 0.0;
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double value = 0.0;

  double operator()(double s) const { return (A * s + B) * s + C; }
  double derivative(double s) const { return 2.0 * A * s + B; }
};

/// Closed form: the minimizer solves u'² = w² + 4Au, hence is quadratic.
/// Of the two roots for A the positive profile with the smaller objective
/// is kept. Throws ValidationError unless u± > 0 and κ > 0.
MicroProfile minimize_profile(double w, double um, double up, double kappa);

double m_value(double w, double um, double up, double kappa);

/// (w (log u⁺ - log u⁻), L (4κ²w² + (u⁺-u⁻)²)/(4κ)), L = (log u⁺ - log u⁻)/(u⁺ - u⁻)
/// with L = 1/u⁺ when the two values agree.
std::pair<double, double> m_bounds(double w, double um, double up, double kappa);

/// (log b - log a)/(b - a), stable for b → a.
double log_mean_inverse(double a, double b);

struct BvpResult {
  double value = 0.0;
  bool converged = false;
  /// true when Newton failed and the value came from brute_force_m
  bool fallback = false;
  std::vector<double> z;
};

/// Newton on the finite-difference form of -z'' - w²/(4z³) = 0, z(±κ) = √u±,
/// n cells, started from the affine interpolant of √u±.
BvpResult newton_bvp_m(double w, double um, double up, double kappa, int n);

/// Direct convex minimization over piecewise-linear u with n cells (test
/// oracle). Requires n ≥ 16.
double brute_force_m(double w, double um, double up, double kappa, int n);

/// Centred three-point time derivative, one-sided three-point at the ends.
std::vector<double> time_derivative(const std::vector<double>& t, const std::vector<double>& y);

/// Per-stamp profiles with w(t) = ½ u̇⁻(t). Throws ValidationError if a
/// boundary value drops below delta.
std::vector<MicroProfile> interpolate_time(const std::vector<double>& t,
                                           const std::vector<double>& um,
                                           const std::vector<double>& up, double kappa,
                                           double delta = 1e-12);

} // namespace kramers
