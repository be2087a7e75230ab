#pragma once

#include "kramers/potential.hpp"

#include <utility>
#include <vector>

namespace kramers {

/// Node table of the rescaling ξ ↦ ŝ_ε(ξ) = ∫_0^ξ dη / (τ_ε g_ε(η)) and its
/// inverse. Only ξ ≥ 0 is tabulated; oddness supplies the rest.
///
/// With F(ξ) = ∫_0^ξ e^{(H-1)/ε} and I = F(1), ŝ = κ F / I. The table keeps
/// both F_j and the tail D_j = I - F_j so that points close to the wall
/// are resolved relative to κ - s rather than to s.
class TransformTable {
public:
  TransformTable() = default;
  TransformTable(const PotentialSpec& spec, double eps, double kappa, int n_nodes);

  double kappa() const { return kappa_; }
  double eps() const { return eps_; }
  /// log of I = ∫_0^1 e^{(H-1)/ε} dξ.
  double log_I() const { return log_I_; }

  double s_of_xi(double xi) const;
  double xi_of_s(double s) const;

  /// Full symmetric table on [-1, 1] as (ξ_j, s_j) pairs, increasing.
  std::vector<std::pair<double, double>> nodes() const;

private:
  double weight(double xi) const; // e^{(H-1)/ε}
  double partial(double a, double b) const;
  double s_nonneg(double xi) const;
  double xi_nonneg(double s) const;

  PotentialSpec spec_;
  double eps_ = 0.0;
  double kappa_ = 0.0;
  double I_ = 0.0;
  double log_I_ = 0.0;
  std::vector<double> xi_;
  std::vector<double> F_;
  std::vector<double> D_;
};

/// Everything tied to one ε. Immutable after build_context.
struct EpsilonContext {
  PotentialSpec spec;
  ReactionConstants rc;
  double eps = 0.0;
  double Z = 0.0;
  double log_Z = 0.0;
  double tau = 0.0;
  double log_tau = 0.0;
  TransformTable table;
  double ghat_floor = 1e-300;

  /// log g_ε(ξ) = -H(ξ)/ε - log Z_ε.
  double log_g(double xi) const { return -spec.H(xi) / eps - log_Z; }
};

/// Z_ε = ∫_{-1}^1 e^{-H/ε} dξ. Accepts any ε > 0.
double partition_Z(const PotentialSpec& spec, double eps);

/// τ_ε = (1/2κ) ∫ dξ / g_ε, evaluated as (Z/κ) e^{1/ε} ∫_0^1 e^{(H-1)/ε}.
double time_scale_tau(const PotentialSpec& spec, double eps);

/// τ_ε / (ε e^{1/ε}).
double watson_ratio(const PotentialSpec& spec, double eps);

/// Requires n_nodes ≥ 64.
TransformTable build_transform(const PotentialSpec& spec, double eps, int n_nodes);

/// Validates the potential and ε ∈ [0.02, 1], then computes Z, τ and the
/// transform table.
EpsilonContext build_context(const PotentialSpec& spec, double eps, int n_nodes = 2000);

/// log ĝ_ε(s) = log τ_ε + 2 log g_ε(ξ̂_ε(s)).
double log_hat_density(const EpsilonContext& ctx, double s);

/// ĝ_ε(s), flushed to ctx.ghat_floor when it would underflow.
double hat_density(const EpsilonContext& ctx, double s);

/// γ_ε mass of [a, b] ⊂ [-1, 1].
double gamma_mass(const EpsilonContext& ctx, double a, double b);

/// Node positions and γ_ε cell masses for a uniform grid of n nodes on
/// [-1, 1] (space xi) or [-κ, κ] (space s); end cells are half cells.
std::vector<double> xi_cell_masses(const EpsilonContext& ctx, const std::vector<double>& nodes);
std::vector<double> s_cell_masses(const EpsilonContext& ctx, const std::vector<double>& nodes);

} // namespace kramers
