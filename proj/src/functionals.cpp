#include "kramers/functionals.hpp"

#include "kramers/errors.hpp"
#include "kramers/fp_solver.hpp"

#include <cmath>
#include <limits>

namespace kramers {

double entropy(const Field& field) {
  const auto& M = field.grid->weights;
  double sum = 0.0;
  for (std::size_t i = 0; i < field.u.size(); ++i) {
    const double u = field.u[i];
    if (u > 0.0)
      sum += M[i] * u * std::log(u);
  }
  const double m = field.mass();
  return m > 0.0 ? sum - m * std::log(m) : sum;
}

FluxField flux_reconstruct(const Trajectory& traj) {
  if (traj.stamps() < 2)
    throw ValidationError("flux_reconstruct: need at least two stamps");
  const auto& M = traj.grid->weights;
  const std::size_t n = traj.grid->size();
  FluxField out;
  for (std::size_t k = 0; k + 1 < traj.stamps(); ++k) {
    const double dt = traj.t[k + 1] - traj.t[k];
    if (!(dt > 0.0))
      throw ValidationError("flux_reconstruct: time stamps must increase");
    const auto& a = traj.u[k];
    const auto& b = traj.u[k + 1];
    std::vector<double> F(n + 1, 0.0);
    double acc = 0.0, comp = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double y = -M[i] * (b[i] - a[i]) / dt - comp;
      const double t = acc + y;
      comp = (t - acc) - y;
      acc = t;
      F[i + 1] = acc;
      scale += std::abs(M[i] * (b[i] - a[i]) / dt);
    }
    const double mass_scale = weighted_sum(a, M) / dt;
    if (std::abs(F[n]) > 1e-10 * (scale + mass_scale) + 1e-300)
      throw ValidationError("flux_reconstruct: trajectory does not conserve mass");
    F[n] = 0.0;
    out.t_mid.push_back(0.5 * (traj.t[k] + traj.t[k + 1]));
    out.faces.push_back(std::move(F));
  }
  return out;
}

namespace {

// Per interior face: factor multiplying F²/ū (kinetic) and (Δ√u)² (slope).
struct FaceWeights {
  std::vector<double> kinetic;
  std::vector<double> slope;
};

FaceWeights face_weights(const Grid& g) {
  const std::size_t nf = g.size() - 1;
  FaceWeights fw;
  fw.kinetic.assign(nf, 0.5 * g.h);
  fw.slope.assign(nf, 2.0 / g.h);
  if (g.space == Space::xi) {
    // conductance = τ g̃ / h
    const auto cond = face_conductance(g);
    for (std::size_t f = 0; f < nf; ++f) {
      const double tg = cond[f] * g.h;
      fw.kinetic[f] = 0.5 * g.h / tg;
      fw.slope[f] = 2.0 * tg / g.h;
    }
  }
  return fw;
}

double slope_at(const std::vector<double>& u, const FaceWeights& fw) {
  double sum = 0.0;
  for (std::size_t f = 0; f + 1 < u.size(); ++f) {
    const double d = std::sqrt(u[f + 1]) - std::sqrt(u[f]);
    sum += fw.slope[f] * d * d;
  }
  return sum;
}

} // namespace

ActionBreakdown dissipation(const Trajectory& traj, const FunctionalOptions& opts) {
  const auto flux = flux_reconstruct(traj);
  const auto fw = face_weights(*traj.grid);
  const std::size_t n = traj.grid->size();
  const double inf = std::numeric_limits<double>::infinity();

  ActionBreakdown r;
  for (std::size_t k = 0; k + 1 < traj.stamps(); ++k) {
    const double dt = traj.t[k + 1] - traj.t[k];
    const auto& a = traj.u[k];
    const auto& b = traj.u[k + 1];
    const auto& F = flux.faces[k];
    double kin = 0.0;
    for (std::size_t f = 0; f + 1 < n; ++f) {
      const double ubar = 0.25 * (a[f] + b[f] + a[f + 1] + b[f + 1]);
      const double w = F[f + 1];
      if (ubar <= opts.floor) {
        if (std::abs(w) > opts.floor)
          kin = inf;
        continue;
      }
      kin += fw.kinetic[f] * w * w / ubar;
    }
    r.kinetic += dt * kin;
    r.slope += 0.5 * dt * (slope_at(a, fw) + slope_at(b, fw));
  }
  r.J = r.kinetic + r.slope;
  r.entropy_start = entropy(traj.at(0));
  r.entropy_end = entropy(traj.at(traj.stamps() - 1));
  r.A = r.entropy_end - r.entropy_start + r.J;
  return r;
}

ActionBreakdown action(const Trajectory& traj, const FunctionalOptions& opts) {
  return dissipation(traj, opts);
}

Trajectory time_reversed(const Trajectory& traj) {
  Trajectory out;
  out.grid = traj.grid;
  out.dt = traj.dt;
  const double T = traj.t.back();
  for (std::size_t k = traj.stamps(); k-- > 0;) {
    out.t.push_back(T - traj.t[k]);
    out.u.push_back(traj.u[k]);
  }
  out.t.front() = 0.0;
  return out;
}

} // namespace kramers
