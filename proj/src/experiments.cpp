#include "kramers/experiments.hpp"

#include "kramers/errors.hpp"
#include "kramers/fp_solver.hpp"
#include "kramers/functionals.hpp"
#include "kramers/io.hpp"
#include "kramers/limit_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace kramers {

InitSpec parse_init(const std::string& text) {
  InitSpec s;
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ValidationError("init: expected kind:args, got '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string args = text.substr(colon + 1);
  if (kind == "file") {
    s.kind = InitSpec::Kind::file;
    s.path = args;
    return s;
  }
  const auto vals = parse_number_list(args);
  if (kind == "const") {
    if (vals.size() != 1)
      throw ValidationError("init const: expected one value");
    s.kind = InitSpec::Kind::constant;
    s.a = s.b = vals[0];
  } else if (kind == "step" || kind == "smooth") {
    if (vals.size() != 2)
      throw ValidationError("init " + kind + ": expected two values");
    s.kind = kind == "step" ? InitSpec::Kind::step : InitSpec::Kind::smooth;
    s.a = vals[0];
    s.b = vals[1];
  } else {
    throw ValidationError("init: unknown kind '" + kind + "'");
  }
  if (!(s.a >= 0.0) || !(s.b >= 0.0))
    throw ValidationError("init: values must be non-negative");
  return s;
}

Field initial_field(const InitSpec& init, GridPtr grid) {
  const double L = grid->nodes.back();
  switch (init.kind) {
  case InitSpec::Kind::constant:
    return constant_field(grid, init.a);
  case InitSpec::Kind::step:
    return step_field(grid, init.a, init.b);
  case InitSpec::Kind::smooth: {
    const double m = 0.5 * (init.a + init.b);
    const double half = 0.5 * (init.a - init.b);
    return field_from(grid, [=](double x) {
      return std::max(0.0, m - half * std::sin(std::numbers::pi * x / (2.0 * L)));
    });
  }
  case InitSpec::Kind::file: {
    const auto tab = read_columns(init.path, 2);
    const auto& xs = tab[0];
    const auto& us = tab[1];
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
      if (!(xs[i + 1] > xs[i]))
        throw ValidationError("init file: first column must increase");
    return field_from(grid, [&](double x) {
      if (x <= xs.front())
        return us.front();
      if (x >= xs.back())
        return us.back();
      const auto it = std::upper_bound(xs.begin(), xs.end(), x);
      const std::size_t j = static_cast<std::size_t>(it - xs.begin());
      const double th = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
      return us[j - 1] + th * (us[j] - us[j - 1]);
    });
  }
  }
  throw ValidationError("init: unhandled kind");
}

std::vector<double> affine_deviation(const Trajectory& traj) {
  const auto& s = traj.grid->nodes;
  const double L = s.back();
  std::vector<double> out;
  out.reserve(traj.stamps());
  for (const auto& u : traj.u) {
    const double a = u.front(), b = u.back();
    double dev = 0.0, top = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double lin = a + (b - a) * (s[i] + L) / (2.0 * L);
      dev = std::max(dev, std::abs(u[i] - lin));
      top = std::max(top, u[i]);
    }
    out.push_back(top > 0.0 ? dev / top : 0.0);
  }
  return out;
}

double median(std::vector<double> v) {
  if (v.empty())
    throw ValidationError("median: empty series");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double fit_rate(const std::vector<double>& t, const std::vector<double>& y, double m,
                double t_min) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double d = std::abs(y[i] - m);
    if (t[i] < t_min || !(d > 1e-10 * std::max(1.0, std::abs(m))))
      continue;
    const double ly = std::log(d);
    sx += t[i];
    sy += ly;
    sxx += t[i] * t[i];
    sxy += t[i] * ly;
    ++n;
  }
  if (n < 2)
    return std::numeric_limits<double>::quiet_NaN();
  const double den = n * sxx - sx * sx;
  return -(n * sxy - sx * sy) / den;
}

ConvergenceReport converge_sweep(const RunConfig& config) {
  if (config.eps.empty())
    throw ValidationError("converge: empty eps list");
  for (double e : config.eps)
    if (!(e >= 0.02 && e <= 1.0))
      throw ValidationError("converge: eps values must lie in [0.02, 1]");
  if (!(config.T_over_k > 0.0) || config.steps < 1 || config.grid < 3)
    throw ValidationError("converge: need T > 0, steps >= 1, grid >= 3");

  const auto rc = reaction_constants(config.potential);
  const double T = config.T_over_k / rc.k;
  ConvergenceReport rep;
  rep.k = rc.k;

  std::vector<double> eps = config.eps;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  LimitTrajectory lim;
  bool have_limit = false;

  for (double e : eps) {
    try {
      auto ctx =
          std::make_shared<const EpsilonContext>(build_context(config.potential, e, config.transform_nodes));
      auto grid = make_grid(ctx, Space::s, config.grid);
      const Field u0 = initial_field(config.init, grid);
      const double m = u0.mass();

      const auto fine = solve_s(u0, T, config.richardson ? 2 * config.steps : config.steps);
      std::vector<double> tm, tp, tt;
      const std::size_t stride = config.richardson ? 2 : 1;
      Trajectory coarse;
      if (config.richardson)
        coarse = solve_s(u0, T, config.steps);
      for (std::size_t n = 0; n * stride < fine.stamps(); ++n) {
        const auto& uf = fine.u[n * stride];
        tt.push_back(fine.t[n * stride]);
        if (config.richardson) {
          const auto& uc = coarse.u[n];
          tm.push_back(2.0 * uf.front() - uc.front());
          tp.push_back(2.0 * uf.back() - uc.back());
        } else {
          tm.push_back(uf.front());
          tp.push_back(uf.back());
        }
      }
      if (!have_limit) {
        lim = solve_limit(u0.u.front(), u0.u.back(), rc.k, T, config.steps);
        have_limit = true;
      }

      ReportRow r;
      r.eps = e;
      for (std::size_t n = 0; n < tt.size(); ++n) {
        const double err = std::abs(tm[n] - lim.um[n]) + std::abs(tp[n] - lim.up[n]);
        r.trace_sup = std::max(r.trace_sup, std::max(std::abs(tm[n] - lim.um[n]),
                                                     std::abs(tp[n] - lim.up[n])));
        if (n + 1 < tt.size()) {
          const double err1 =
              std::abs(tm[n + 1] - lim.um[n + 1]) + std::abs(tp[n + 1] - lim.up[n + 1]);
          r.trace_L1 += 0.5 * (tt[n + 1] - tt[n]) * (err + err1);
        }
      }
      const double t_min = config.rate_window / rc.k;
      r.rate_obs = fit_rate(tt, tm, m, t_min);
      r.rate_ratio = r.rate_obs / (2.0 * rc.k);
      r.watson = watson_ratio(config.potential, e);
      r.affine_dev = median(affine_deviation(fine));
      const auto ab = action(fine);
      r.J_eps = ab.J;
      r.A_eps = ab.A;
      rep.rows.push_back(r);
    } catch (const ValidationError& ex) {
      throw ValidationError("eps=" + format_double(e) + ": " + ex.what());
    } catch (const NumericalError& ex) {
      throw NumericalError("eps=" + format_double(e) + ": " + ex.what());
    }
  }

  const auto a0 = action0(lim, rc.kappa);
  rep.J0 = a0.J0;
  ReportRow limit;
  limit.eps = 0.0;
  limit.rate_obs = 2.0 * rc.k;
  limit.rate_ratio = 1.0;
  limit.watson = 1.0;
  limit.J_eps = a0.J0;
  limit.A_eps = a0.A0;
  rep.rows.push_back(limit);
  return rep;
}

} // namespace kramers
