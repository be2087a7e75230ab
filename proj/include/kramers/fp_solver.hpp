#pragma once

#include "kramers/field.hpp"

#include <vector>

namespace kramers {

/// Implicit Euler for ĝ_ε ∂_t û = ∂_ss û on the field's s-grid, no-flux ends.
/// Each step solves (M + Δt K) û^{n+1} = M û^n with M the γ_ε cell masses and
/// K the three-point stiffness with face conductance 1/h.
Trajectory solve_s(const Field& u0, double T, int n_steps);

/// Same scheme for g_ε ∂_t u = τ_ε ∂_ξ(g_ε ∂_ξ u) on the ξ-grid. The face
/// conductance is τ_ε g̃/h with g̃ the harmonic mean of g_ε at the two
/// neighbouring nodes.
Trajectory solve_xi(const Field& u0, double T, int n_steps);

/// Face conductances the solvers use (size n - 1).
std::vector<double> face_conductance(const Grid& grid);

/// Resamples a ξ-space trajectory on a uniform s-grid of n_nodes nodes
/// (0 = same count as the input) via û(s) = u(ξ̂_ε(s)).
Trajectory pushforward(const Trajectory& traj, int n_nodes = 0);
Field pushforward(const Field& field, GridPtr s_grid);

struct Traces {
  std::vector<double> t;
  std::vector<double> minus;
  std::vector<double> plus;
};

/// Boundary node values û(t, -κ), û(t, κ) per stamp.
Traces traces(const Trajectory& traj);

} // namespace kramers
