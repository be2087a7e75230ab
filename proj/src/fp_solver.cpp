#include "kramers/fp_solver.hpp"

#include "kramers/errors.hpp"
#include "kramers/interpolation.hpp"
#include "kramers/quadrature.hpp"
#include "kramers/tridiagonal.hpp"

#include <cmath>
#include <numbers>

namespace kramers {

std::vector<double> face_conductance(const Grid& grid) {
  const std::size_t n = grid.size();
  std::vector<double> c(n - 1);
  if (grid.space == Space::s) {
    for (auto& v : c)
      v = 1.0 / grid.h;
    return c;
  }
  const auto& ctx = *grid.ctx;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double la = ctx.log_g(grid.nodes[i]);
    const double lb = ctx.log_g(grid.nodes[i + 1]);
    const double log_harm = std::numbers::ln2 + la + lb - quad::log_add(la, lb);
    c[i] = std::exp(ctx.log_tau + log_harm - std::log(grid.h));
  }
  return c;
}

namespace {

Trajectory implicit_euler(const Field& u0, double T, int n_steps, Space expected) {
  if (!u0.grid || u0.grid->space != expected)
    throw ValidationError("solver: initial field lives on the wrong grid");
  if (n_steps < 1)
    throw ValidationError("solver: need at least one step");
  if (!(T > 0.0) || !std::isfinite(T))
    throw ValidationError("solver: T must be positive");
  make_field(u0.grid, u0.u); // validates values

  const Grid& g = *u0.grid;
  const std::size_t n = g.size();
  const double dt = T / n_steps;
  const auto cond = face_conductance(g);
  const auto& M = g.weights;

  std::vector<double> lower(n, 0.0), diag(n), upper(n, 0.0), rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double cl = i > 0 ? cond[i - 1] : 0.0;
    const double cr = i + 1 < n ? cond[i] : 0.0;
    diag[i] = M[i] + dt * (cl + cr);
    if (i > 0)
      lower[i] = -dt * cl;
    if (i + 1 < n)
      upper[i] = -dt * cr;
  }

  Trajectory tr;
  tr.grid = u0.grid;
  tr.dt = dt;
  tr.t.reserve(n_steps + 1);
  tr.u.reserve(n_steps + 1);
  tr.t.push_back(0.0);
  tr.u.push_back(u0.u);

  // increment form: (M + dt K) δ = -dt K u^n, so constants stay put exactly
  std::vector<double> cur = u0.u;
  for (int step = 1; step <= n_steps; ++step) {
    for (std::size_t i = 0; i < n; ++i) {
      double ku = 0.0;
      if (i > 0)
        ku += cond[i - 1] * (cur[i] - cur[i - 1]);
      if (i + 1 < n)
        ku += cond[i] * (cur[i] - cur[i + 1]);
      rhs[i] = -dt * ku;
    }
    const auto delta = solve_tridiagonal(lower, diag, upper, rhs);
    for (std::size_t i = 0; i < n; ++i)
      cur[i] += delta[i];
    tr.t.push_back(step == n_steps ? T : step * dt);
    tr.u.push_back(cur);
  }
  return tr;
}

} // namespace

Trajectory solve_s(const Field& u0, double T, int n_steps) {
  return implicit_euler(u0, T, n_steps, Space::s);
}

Trajectory solve_xi(const Field& u0, double T, int n_steps) {
  return implicit_euler(u0, T, n_steps, Space::xi);
}

namespace {
std::vector<double> resample(const std::vector<double>& xi_nodes, const std::vector<double>& u,
                             const std::vector<double>& at) {
  const MonotoneCubic interp(xi_nodes, u);
  std::vector<double> out(at.size());
  for (std::size_t i = 0; i < at.size(); ++i)
    out[i] = std::max(0.0, interp(at[i]));
  return out;
}

std::vector<double> preimages(const Grid& s_grid) {
  std::vector<double> at(s_grid.size());
  for (std::size_t i = 0; i < at.size(); ++i)
    at[i] = s_grid.ctx->table.xi_of_s(s_grid.nodes[i]);
  return at;
}
} // namespace

Field pushforward(const Field& field, GridPtr s_grid) {
  if (field.grid->space != Space::xi || s_grid->space != Space::s)
    throw ValidationError("pushforward: expects a ξ-field and an s-grid");
  return make_field(s_grid, resample(field.grid->nodes, field.u, preimages(*s_grid)));
}

Trajectory pushforward(const Trajectory& traj, int n_nodes) {
  if (traj.grid->space != Space::xi)
    throw ValidationError("pushforward: trajectory is not in ξ-space");
  const int n = n_nodes > 0 ? n_nodes : static_cast<int>(traj.grid->size());
  auto s_grid = make_grid(traj.grid->ctx, Space::s, n);
  const auto at = preimages(*s_grid);
  Trajectory out;
  out.grid = s_grid;
  out.dt = traj.dt;
  out.t = traj.t;
  out.u.reserve(traj.u.size());
  for (const auto& u : traj.u)
    out.u.push_back(resample(traj.grid->nodes, u, at));
  return out;
}

Traces traces(const Trajectory& traj) {
  Traces tr;
  tr.t = traj.t;
  for (const auto& u : traj.u) {
    tr.minus.push_back(u.front());
    tr.plus.push_back(u.back());
  }
  return tr;
}

} // namespace kramers
