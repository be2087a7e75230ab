#pragma once

#include "kramers/field.hpp"

#include <vector>

namespace kramers {

struct RecoveryConfig {
  /// clamp strength, in (0, 1)
  double eta = 0.2;
  /// Gaussian standard deviation in time units
  double width = 0.02;
  /// use eta·ε and width·ε for each ε, so both vanish along the sweep
  bool scale_with_eps = true;
  std::vector<double> eps_list{0.2, 0.1, 0.05};
  int grid = 401;
};

struct WellSeries {
  std::vector<double> um;
  std::vector<double> up;
};

/// y⁻ = m + (1-η)(u⁻ - m), same for y⁺. Requires constant mass.
WellSeries clamp(const WellSeries& u, double eta);

/// Gaussian smoothing (σ = width, cut at 4σ) of a uniformly sampled series
/// with even reflection at both ends; the result stays inside the input range.
std::vector<double> mollify(const std::vector<double>& t, const std::vector<double>& y,
                            double width);

/// clamp → mollify → micro-profile interpolation → mass correction, sampled
/// on a uniform s-grid of ctx with config.grid nodes at the stamps t.
/// eta and width are taken as given (no ε scaling here).
Trajectory build_recovery(const std::vector<double>& t, const WellSeries& u, ContextPtr ctx,
                          const RecoveryConfig& config);

struct RecoveryRow {
  double eps = 0.0;
  double trace_L1 = 0.0;
  double J_eps = 0.0;
  double J0 = 0.0;
  double E_start_gap = 0.0;
  double E_end_gap = 0.0;
};

/// One row per ε in config.eps_list (input order). J0 is that of the input
/// curve; gaps are absolute differences.
std::vector<RecoveryRow> recovery_sweep(const PotentialSpec& spec, const std::vector<double>& t,
                                        const WellSeries& u, const RecoveryConfig& config);

} // namespace kramers
