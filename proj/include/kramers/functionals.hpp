#pragma once

#include "kramers/field.hpp"

#include <vector>

namespace kramers {

/// Mass flux on cell faces per time interval. faces[n] has size+1 entries:
/// the two walls (first and last) plus the interior faces in between.
struct FluxField {
  std::vector<double> t_mid;
  std::vector<std::vector<double>> faces;
};

struct ActionBreakdown {
  double entropy_start = 0.0;
  double entropy_end = 0.0;
  double kinetic = 0.0;
  double slope = 0.0;
  double J = 0.0;
  double A = 0.0;
};

struct FunctionalOptions {
  /// û ≤ floor together with |ŵ| ≤ floor counts as 0/0 = 0; û ≤ floor with
  /// a larger flux makes the kinetic term +∞.
  double floor = 1e-15;
};

/// ∫ u log u dγ_ε - m log m, with 0 log 0 = 0.
double entropy(const Field& field);

/// F_{i+1/2} = -Σ_{j≤i} M_j (u_j^{n+1} - u_j^n)/Δt, the rightward flux that
/// makes the discrete continuity equation exact. Throws ValidationError if
/// the trajectory does not conserve mass.
FluxField flux_reconstruct(const Trajectory& traj);

/// Kinetic part: midpoint-in-time ½ F²/ū per interior face; slope part:
/// 2|Δ√u/h|² per face at the stamps, trapezoid in time. On ξ-grids both carry
/// the τ_ε g_ε face weight of the unscaled functional.
ActionBreakdown dissipation(const Trajectory& traj, const FunctionalOptions& opts = {});

/// Same as dissipation; A = E(end) - E(start) + J.
ActionBreakdown action(const Trajectory& traj, const FunctionalOptions& opts = {});

/// Stamps in reverse order, times mirrored onto [0, T].
Trajectory time_reversed(const Trajectory& traj);

} // namespace kramers
