#include "kramers/recovery.hpp"

#include "kramers/errors.hpp"
#include "kramers/fp_solver.hpp"
#include "kramers/functionals.hpp"
#include "kramers/limit_system.hpp"
#include "kramers/micro_m.hpp"

#include <algorithm>
#include <cmath>

namespace kramers {

namespace {

double constant_mass(const WellSeries& u) {
  if (u.um.size() != u.up.size() || u.um.empty())
    throw ValidationError("recovery: well series must be non-empty and of equal length");
  const double m = 0.5 * (u.um[0] + u.up[0]);
  for (std::size_t i = 0; i < u.um.size(); ++i)
    if (std::abs(0.5 * (u.um[i] + u.up[i]) - m) > 1e-10 * std::max(1.0, m))
      throw ValidationError("recovery: mass of the input curve is not constant");
  return m;
}

} // namespace

WellSeries clamp(const WellSeries& u, double eta) {
  if (!(eta >= 0.0 && eta < 1.0))
    throw ValidationError("clamp: eta must lie in [0, 1)");
  const double m = constant_mass(u);
  WellSeries y;
  for (std::size_t i = 0; i < u.um.size(); ++i) {
    y.um.push_back(m + (1.0 - eta) * (u.um[i] - m));
    y.up.push_back(m + (1.0 - eta) * (u.up[i] - m));
  }
  return y;
}

std::vector<double> mollify(const std::vector<double>& t, const std::vector<double>& y,
                            double width) {
  if (!(width > 0.0))
    throw ValidationError("mollify: width must be positive");
  const std::size_t n = y.size();
  if (t.size() != n || n < 2)
    throw ValidationError("mollify: need at least two matching samples");
  const double dt = (t.back() - t.front()) / static_cast<double>(n - 1);
  const double sig = width / dt;
  const long reach = std::max<long>(1, static_cast<long>(std::ceil(4.0 * sig)));
  std::vector<double> ker(reach + 1);
  for (long j = 0; j <= reach; ++j)
    ker[j] = std::exp(-0.5 * (j / sig) * (j / sig));

  const long last = static_cast<long>(n) - 1;
  auto mirror = [last](long i) {
    // even extension about both ends, period 2·last
    const long period = 2 * last;
    i %= period;
    if (i < 0)
      i += period;
    return i <= last ? i : period - i;
  };
  const double lo = *std::min_element(y.begin(), y.end());
  const double hi = *std::max_element(y.begin(), y.end());
  std::vector<double> out(n);
  for (long i = 0; i <= last; ++i) {
    double s = 0.0, wsum = 0.0;
    for (long j = -reach; j <= reach; ++j) {
      const double w = ker[std::abs(j)];
      s += w * y[mirror(i + j)];
      wsum += w;
    }
    out[i] = std::clamp(s / wsum, lo, hi);
  }
  return out;
}

Trajectory build_recovery(const std::vector<double>& t, const WellSeries& u, ContextPtr ctx,
                          const RecoveryConfig& config) {
  const double m = constant_mass(u);
  if (t.size() != u.um.size())
    throw ValidationError("build_recovery: time and series lengths differ");
  auto y = clamp(u, config.eta);
  WellSeries s;
  s.um = mollify(t, y.um, config.width);
  for (double v : s.um)
    s.up.push_back(2.0 * m - v);

  const auto profiles = interpolate_time(t, s.um, s.up, ctx->rc.kappa);
  auto grid = make_grid(ctx, Space::s, config.grid);
  double wsum = 0.0;
  for (double w : grid->weights)
    wsum += w;

  Trajectory tr;
  tr.grid = grid;
  tr.t = t;
  tr.dt = t.size() > 1 ? (t.back() - t.front()) / (t.size() - 1) : 0.0;
  for (const auto& p : profiles) {
    std::vector<double> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = p(grid->nodes[i]);
    const double shift = (weighted_sum(v, grid->weights) - m) / wsum;
    for (double& x : v) {
      x -= shift;
      if (x < 0.0)
        throw NumericalError("build_recovery: mass correction made the field negative; "
                             "increase eta or the mollifier width");
    }
    tr.u.push_back(std::move(v));
  }
  return tr;
}

std::vector<RecoveryRow> recovery_sweep(const PotentialSpec& spec, const std::vector<double>& t,
                                        const WellSeries& u, const RecoveryConfig& config) {
  const auto rc = reaction_constants(spec);
  const auto lim = make_limit_trajectory(t, u.um, u.up);
  const double J0 = dissipation0(lim, rc.kappa);
  const double E0_start = entropy0(lim.at(0));
  const double E0_end = entropy0(lim.at(lim.stamps() - 1));

  std::vector<RecoveryRow> rows;
  for (double eps : config.eps_list) {
    auto ctx = std::make_shared<const EpsilonContext>(build_context(spec, eps));
    RecoveryConfig local = config;
    if (config.scale_with_eps) {
      local.eta = config.eta * eps;
      local.width = config.width * eps;
    }
    const auto tr = build_recovery(t, u, ctx, local);
    const auto ab = action(tr);
    const auto tc = traces(tr);
    RecoveryRow r;
    r.eps = eps;
    r.J_eps = ab.J;
    r.J0 = J0;
    r.E_start_gap = std::abs(ab.entropy_start - E0_start);
    r.E_end_gap = std::abs(ab.entropy_end - E0_end);
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
      const double dt = t[k + 1] - t[k];
      const double e0 = std::abs(tc.minus[k] - u.um[k]) + std::abs(tc.plus[k] - u.up[k]);
      const double e1 =
          std::abs(tc.minus[k + 1] - u.um[k + 1]) + std::abs(tc.plus[k + 1] - u.up[k + 1]);
      r.trace_L1 += 0.5 * dt * (e0 + e1);
    }
    rows.push_back(r);
  }
  return rows;
}

} // namespace kramers
