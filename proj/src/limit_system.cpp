#include "kramers/limit_system.hpp"

#include "kramers/errors.hpp"
#include "kramers/micro_m.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <limits>

namespace kramers {

namespace {

void check_start(double um0, double up0, double T, int n_steps) {
  if (!(um0 >= 0.0) || !(up0 >= 0.0))
    throw ValidationError("solve_limit: initial densities must be non-negative");
  if (!(T > 0.0) || n_steps < 1)
    throw ValidationError("solve_limit: need T > 0 and at least one step");
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// M extended to touching boundaries: finite only without flux
double m_ext(double w, double um, double up, double kappa) {
  if (um > 0.0 && up > 0.0)
    return m_value(w, um, up, kappa);
  if (w == 0.0) {
    const double d = std::sqrt(std::max(up, 0.0)) - std::sqrt(std::max(um, 0.0));
    return d * d / kappa;
  }
  return std::numeric_limits<double>::infinity();
}

} // namespace

LimitTrajectory solve_limit(double um0, double up0, double k, double T, int n_steps) {
  check_start(um0, up0, T, n_steps);
  const double m = 0.5 * (um0 + up0);
  LimitTrajectory tr;
  for (int n = 0; n <= n_steps; ++n) {
    const double t = n == n_steps ? T : T * n / n_steps;
    const double um = m + (um0 - m) * std::exp(-2.0 * k * t);
    const double up = 2.0 * m - um;
    tr.t.push_back(t);
    tr.um.push_back(um);
    tr.up.push_back(up);
    tr.w.push_back(0.5 * k * (up - um));
  }
  return tr;
}

LimitTrajectory solve_limit_rk4(double um0, double up0, double k, double T, int n_steps) {
  check_start(um0, up0, T, n_steps);
  const double dt = T / n_steps;
  auto f = [k](double a, double b) { return k * (b - a); };
  LimitTrajectory tr;
  double a = um0, b = up0;
  for (int n = 0; n <= n_steps; ++n) {
    tr.t.push_back(n * dt);
    tr.um.push_back(a);
    tr.up.push_back(b);
    tr.w.push_back(0.5 * f(a, b));
    const double k1 = f(a, b);
    const double k2 = f(a + 0.5 * dt * k1, b - 0.5 * dt * k1);
    const double k3 = f(a + 0.5 * dt * k2, b - 0.5 * dt * k2);
    const double k4 = f(a + dt * k3, b - dt * k3);
    const double da = dt * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0;
    a += da;
    b -= da;
  }
  return tr;
}

LimitTrajectory make_limit_trajectory(std::vector<double> t, std::vector<double> um,
                                      std::vector<double> up) {
  if (t.size() != um.size() || t.size() != up.size() || t.size() < 2)
    throw ValidationError("limit trajectory: need at least two matching samples");
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (!(t[i + 1] > t[i]))
      throw ValidationError("limit trajectory: times must increase");
  const double m = 0.5 * (um[0] + up[0]);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(um[i] >= 0.0) || !(up[i] >= 0.0))
      throw ValidationError("limit trajectory: densities must be non-negative");
    if (std::abs(0.5 * (um[i] + up[i]) - m) > 1e-12 * std::max(1.0, m))
      throw ValidationError("limit trajectory: mass is not constant");
  }
  LimitTrajectory tr;
  tr.w = time_derivative(t, um);
  for (auto& v : tr.w)
    v *= 0.5;
  tr.t = std::move(t);
  tr.um = std::move(um);
  tr.up = std::move(up);
  return tr;
}

double entropy0(const LimitState& s) {
  if (!(s.um >= 0.0) || !(s.up >= 0.0))
    throw ValidationError("entropy0: densities must be non-negative");
  return 0.5 * (xlogx(s.up) + xlogx(s.um)) - xlogx(s.mass());
}

double dissipation0(const LimitTrajectory& traj, double kappa) {
  if (traj.stamps() < 2)
    throw ValidationError("dissipation0: need at least two stamps");
  using GL = boost::math::quadrature::gauss<double, 10>;
  double J = 0.0;
  for (std::size_t n = 0; n + 1 < traj.stamps(); ++n) {
    const double dt = traj.t[n + 1] - traj.t[n];
    const double a0 = traj.um[n], a1 = traj.um[n + 1];
    const double b0 = traj.up[n], b1 = traj.up[n + 1];
    const double w = 0.5 * (a1 - a0) / dt;
    // a zero end value with flux is a log singularity in time; the Gauss
    // points stay inside the interval, where both values are positive
    auto integrand = [&](double th) {
      return m_ext(w, a0 + th * (a1 - a0), b0 + th * (b1 - b0), kappa);
    };
    J += dt * GL::integrate(integrand, 0.0, 1.0);
  }
  return J;
}

LimitAction action0(const LimitTrajectory& traj, double kappa) {
  LimitAction a;
  a.entropy_start = entropy0(traj.at(0));
  a.entropy_end = entropy0(traj.at(traj.stamps() - 1));
  a.J0 = dissipation0(traj, kappa);
  a.A0 = a.entropy_end - a.entropy_start + a.J0;
  return a;
}

double contact_residual(const LimitState& s, double w, double kappa) {
  const double lower = m_bounds(w, s.um, s.up, kappa).first;
  return m_value(w, s.um, s.up, kappa) - lower;
}

double psi0(const LimitState& s, double w, double k) {
  if (!(s.um > 0.0) || !(s.up > 0.0) || !(k > 0.0))
    throw ValidationError("psi0: need positive densities and k");
  return log_mean_inverse(s.um, s.up) * w * w / k;
}

double psi0_rate(const LimitState& s, double k) {
  if (!(s.um > 0.0) || !(s.up > 0.0) || !(k > 0.0))
    throw ValidationError("psi0_rate: need positive densities and k");
  if (s.um == s.up)
    return 0.0;
  // 2 L w / k = log u⁺ - log u⁻, and L (u⁺ - u⁻) = log u⁺ - log u⁻
  const double w = 0.5 * k * (s.up - s.um);
  return 2.0 * w;
}

} // namespace kramers
