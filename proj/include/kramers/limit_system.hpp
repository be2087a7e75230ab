#pragma once

#include <vector>

namespace kramers {

struct LimitState {
  double um = 0.0;
  double up = 0.0;
  double mass() const { return 0.5 * (um + up); }
};

/// Stamps with well densities and the flux w = ½ u̇⁻ at each stamp.
struct LimitTrajectory {
  std::vector<double> t;
  std::vector<double> um;
  std::vector<double> up;
  std::vector<double> w;

  std::size_t stamps() const { return t.size(); }
  LimitState at(std::size_t n) const { return {um.at(n), up.at(n)}; }
};

struct LimitAction {
  double entropy_start = 0.0;
  double entropy_end = 0.0;
  double J0 = 0.0;
  double A0 = 0.0;
};

/// Closed form u⁻(t) = m + (u⁻₀ - m) e^{-2kt}, u⁺ = 2m - u⁻.
LimitTrajectory solve_limit(double um0, double up0, double k, double T, int n_steps);

/// Classical RK4 on the same ODE (cross-check).
LimitTrajectory solve_limit_rk4(double um0, double up0, double k, double T, int n_steps);

/// Wraps sampled curves; w from time_derivative of u⁻.
LimitTrajectory make_limit_trajectory(std::vector<double> t, std::vector<double> um,
                                      std::vector<double> up);

/// ½(u⁺ log u⁺ + u⁻ log u⁻) - m log m, 0 log 0 = 0.
double entropy0(const LimitState& s);

/// ∫ M(w; u±) dt along the piecewise-linear path through the stamps, with
/// w = ½Δu⁻/Δt on each interval and Gauss-Legendre in time inside it.
/// A well may touch 0 at a stamp: M is then only sampled inside the adjacent
/// intervals. A well that stays at 0 over an interval carries no flux there
/// and M(0; 0, u) = u/κ is used.
double dissipation0(const LimitTrajectory& traj, double kappa);

LimitAction action0(const LimitTrajectory& traj, double kappa);

/// M(w; u±) - w (log u⁺ - log u⁻) ≥ 0, zero exactly when w = k(u⁺ - u⁻)/2.
double contact_residual(const LimitState& s, double w, double kappa);

/// ψ₀(w) = (1/k) L w², L = (log u⁺ - log u⁻)/(u⁺ - u⁻).
double psi0(const LimitState& s, double w, double k);

/// Stationary point of ψ₀(w) - w (log u⁺ - log u⁻), returned as u̇⁻ = 2w.
double psi0_rate(const LimitState& s, double k);

} // namespace kramers
