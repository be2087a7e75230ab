#pragma once

#include "kramers/field.hpp"
#include "kramers/potential.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kramers {

/// Initial data descriptor shared by the CLI and the sweep.
struct InitSpec {
  enum class Kind { smooth, step, constant, file } kind = Kind::smooth;
  /// smooth and step: values at the left / right end; constant: a
  double a = 2.0;
  double b = 0.0;
  std::string path;
};

/// "smooth:a,b" | "step:a,b" | "const:c" | "file:<csv>"
InitSpec parse_init(const std::string& text);

/// Builds the initial field on grid. smooth is m - ((a - b)/2) sin(π x / 2L)
/// with L the half-width of the grid, so its end values are exactly (a, b).
/// file reads a CSV with columns (x, u) and interpolates linearly.
Field initial_field(const InitSpec& init, GridPtr grid);

struct RunConfig {
  PotentialSpec potential = default_potential();
  std::vector<double> eps{0.2, 0.12, 0.08, 0.05};
  int grid = 401;
  int steps = 2000;
  /// horizon in units of 1/k
  double T_over_k = 2.0;
  InitSpec init;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  /// combine runs with N and 2N steps as 2 u_2N - u_N for the traces
  bool richardson = true;
  /// rate fit uses t ≥ rate_window / k
  double rate_window = 0.2;
  int transform_nodes = 2000;
};

struct ReportRow {
  double eps = 0.0;
  double trace_L1 = 0.0;
  double trace_sup = 0.0;
  double rate_obs = 0.0;
  double rate_ratio = 0.0;
  double watson = 0.0;
  double affine_dev = 0.0;
  double J_eps = 0.0;
  double A_eps = 0.0;
};

struct ConvergenceReport {
  /// ε descending; the limit row (eps = 0) comes last
  std::vector<ReportRow> rows;
  double k = 0.0;
  double J0 = 0.0;
};

/// max_s |û(t,s) - affine interpolant of û(t,±κ)| / max_s û(t,·) per stamp.
std::vector<double> affine_deviation(const Trajectory& traj);

/// Median of a series (mean of the two middle values for even length).
double median(std::vector<double> v);

/// Least-squares slope of log|y - m| against t over t ≥ t_min, negated.
double fit_rate(const std::vector<double>& t, const std::vector<double>& y, double m, double t_min);

ConvergenceReport converge_sweep(const RunConfig& config);

} // namespace kramers
