#pragma once

#include "kramers/field.hpp"

#include <cstdint>
#include <vector>

namespace kramers {

enum class SdeScheme {
  euler_maruyama,
  /// X += b(X) dt + √(2τ dt) (R_n + R_{n+1})/2: same cost, but exact
  /// stationary variance for linear drift
  leimkuhler_matthews,
};

struct ParticleOptions {
  int bins = 400;
  /// extra snapshot times in (0, T); T itself is always recorded
  std::vector<double> snapshots;
  /// scales the noise amplitude; 0 gives plain gradient descent
  double noise_scale = 1.0;
  SdeScheme scheme = SdeScheme::euler_maruyama;
};

struct Histogram {
  double t = 0.0;
  std::vector<double> edges;
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;
};

struct ParticleRun {
  std::vector<Histogram> histograms;
  std::vector<double> final_positions;
  double dt = 0.0;
  int steps = 0;
};

/// Fold x back into [-1, 1] by repeated mirroring at the walls.
double reflect(double x);

/// n draws from γ_ε conditioned on ξ < 0, deterministic in seed.
std::vector<double> sample_left_well(const EpsilonContext& ctx, std::size_t n, std::uint64_t seed);

/// dξ = -(τ_ε/ε) H'(ξ) dt + √(2τ_ε) dW with reflecting walls. Particles are
/// grouped in blocks with their own generator seeded by (seed, block), so
/// results do not depend on execution order. Throws ValidationError when
/// max|drift|·dt > 0.5.
ParticleRun simulate(const EpsilonContext& ctx, std::vector<double> x0, double T, double dt,
                     std::uint64_t seed, const ParticleOptions& opts = {});

/// Right-continuous piecewise-linear CDF; a repeated abscissa encodes an atom.
struct PiecewiseCdf {
  std::vector<double> x;
  std::vector<double> F;
};

PiecewiseCdf cdf_of(const Histogram& h);
/// Cell masses M_i u_i spread uniformly over the grid cells.
PiecewiseCdf cdf_of(const Field& f);

/// ∫ |F_a - F_b| dx, exact for piecewise-linear CDFs. Throws ValidationError
/// if the total masses differ by more than 1e-6.
double w1_distance(const PiecewiseCdf& a, const PiecewiseCdf& b);

double empirical_distance(const Histogram& h, const Field& f);

} // namespace kramers
