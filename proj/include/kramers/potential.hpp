#pragma once

#include <functional>
#include <string>
#include <vector>

namespace kramers {

/// Double-well enthalpy H on [-1, 1] with its first two derivatives.
/// Expected shape: even, H(0) = 1 (barrier), H(±1) = 0 (wells).
struct PotentialSpec {
  std::function<double(double)> H;
  std::function<double(double)> dH;
  std::function<double(double)> d2H;
  bool is_default = false;
  std::string name;
};

/// Rate constant of the two-state limit and the half-length of the
/// rescaled domain [-kappa, kappa]; kappa = 1 / k.
struct ReactionConstants {
  double k = 0.0;
  double kappa = 0.0;
};

struct ValidationReport {
  bool even = false;
  bool endpoint_values = false;
  bool curvature_signs = false;
  bool derivatives_consistent = false;
  std::vector<std::string> failures;

  bool ok() const {
    return even && endpoint_values && curvature_signs && derivatives_consistent;
  }
};

/// H(ξ) = (1 - ξ²)².
PotentialSpec default_potential();

/// H(ξ) = Σ c_i ξ^i; derivatives come from the coefficients.
PotentialSpec polynomial_potential(std::vector<double> coeffs);

/// Checks evenness, H(0) = 1, H(±1) = 0, H''(0) < 0 < H''(1), and compares
/// dH / d2H against central finite differences of H on n_samples points.
ValidationReport validate(const PotentialSpec& spec, int n_samples);

/// k = sqrt(|H''(0)| H''(1)) / π. Throws ValidationError unless the
/// barrier is a strict maximum and the wells strict minima.
ReactionConstants reaction_constants(const PotentialSpec& spec);

} // namespace kramers
