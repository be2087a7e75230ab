#include "kramers/errors.hpp"
#include "kramers/fp_solver.hpp"
#include "kramers/quadrature.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace kramers;

namespace {
ContextPtr ctx_at(double eps) {
  return std::make_shared<const EpsilonContext>(build_context(default_potential(), eps));
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}
} // namespace

TEST_CASE("constant data is stationary") {
  const auto ctx = ctx_at(0.1);
  for (auto sp : {Space::s, Space::xi}) {
    const auto g = make_grid(ctx, sp, 101);
    const auto traj = sp == Space::s ? solve_s(constant_field(g, 1.7), 1.0, 50)
                                     : solve_xi(constant_field(g, 1.7), 1.0, 50);
    for (const auto& u : traj.u)
      for (double v : u)
        CHECK(v == 1.7);
  }
}

TEST_CASE("mass is conserved") {
  const auto ctx = ctx_at(0.1);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.1, 3.0);
  for (auto sp : {Space::s, Space::xi}) {
    const auto g = make_grid(ctx, sp, 101);
    std::vector<double> u(g->size());
    for (double& v : u)
      v = U(rng);
    const auto f = make_field(g, u);
    const auto traj = sp == Space::s ? solve_s(f, 2.0 / ctx->rc.k, 1000)
                                     : solve_xi(f, 2.0 / ctx->rc.k, 1000);
    CHECK(std::abs(traj.mass(traj.stamps() - 1) / f.mass() - 1.0) <= 1e-12);
  }
}

TEST_CASE("step data relaxes to the mean") {
  const auto ctx = ctx_at(0.1);
  const auto g = make_grid(ctx, Space::s, 201);
  const auto traj = solve_s(step_field(g, 2.0, 0.0), 2.0 / ctx->rc.k, 1000);
  const auto& last = traj.u.back();
  // e^{-2kT} = e^{-4} leaves a 2% affine residue
  for (double v : last)
    CHECK(std::abs(v - 1.0) < 0.05);
  const auto long_run = solve_s(step_field(g, 2.0, 0.0), 10.0 / ctx->rc.k, 1000);
  for (double v : long_run.u.back())
    CHECK(std::abs(v - 1.0) < 1e-6);
}

TEST_CASE("traces") {
  const auto ctx = ctx_at(0.1);
  const auto g = make_grid(ctx, Space::s, 201);
  const auto c = traces(solve_s(constant_field(g, 0.4), 1.0, 10));
  for (std::size_t n = 0; n < c.t.size(); ++n) {
    CHECK(c.minus[n] == 0.4);
    CHECK(c.plus[n] == 0.4);
  }
  const auto tr = traces(solve_s(step_field(g, 2.0, 0.0), 3.0 / ctx->rc.k, 600));
  CHECK(tr.minus.front() == 2.0);
  CHECK(tr.plus.front() == 0.0);
  CHECK(std::abs(tr.minus.back() - 1.0) < 0.1);
  CHECK(std::abs(tr.plus.back() - 1.0) < 0.1);
}

TEST_CASE("face conductance") {
  const auto ctx = ctx_at(0.2);
  const auto gs = make_grid(ctx, Space::s, 11);
  for (double c : face_conductance(*gs))
    CHECK(c == doctest::Approx(1.0 / gs->h));
  const auto gx = make_grid(ctx, Space::xi, 11);
  const auto cx = face_conductance(*gx);
  REQUIRE(cx.size() == 10);
  for (std::size_t i = 0; i < cx.size(); ++i)
    CHECK(cx[i] == doctest::Approx(cx[cx.size() - 1 - i]).epsilon(1e-12));
}

TEST_CASE("solver input validation") {
  const auto ctx = ctx_at(0.2);
  const auto g = make_grid(ctx, Space::s, 11);
  CHECK_THROWS_AS(solve_s(constant_field(g, 1.0), -1.0, 10), ValidationError);
  CHECK_THROWS_AS(solve_s(constant_field(g, 1.0), 1.0, 0), ValidationError);
  const auto gx = make_grid(ctx, Space::xi, 11);
  CHECK_THROWS_AS(solve_s(constant_field(gx, 1.0), 1.0, 10), ValidationError);
  CHECK_THROWS_AS(make_field(g, std::vector<double>(11, -1.0)), ValidationError);
  CHECK_THROWS_AS(make_field(g, std::vector<double>(3, 1.0)), ValidationError);
}

TEST_CASE("pushforward") {
  const auto ctx = ctx_at(0.2);
  const auto gx = make_grid(ctx, Space::xi, 401);
  const auto gs = make_grid(ctx, Space::s, 401);
  const auto c = pushforward(constant_field(gx, 2.5), gs);
  for (double v : c.u)
    CHECK(v == doctest::Approx(2.5).epsilon(1e-14));

  const auto sq = pushforward(field_from(gx, [](double x) { return x * x; }), gs);
  for (std::size_t i = 0; i < gs->size(); ++i) {
    const double xi = ctx->table.xi_of_s(gs->nodes[i]);
    CHECK(std::abs(sq.u[i] - xi * xi) <= 1e-6);
  }

  // mass invariance of u ↦ u∘ξ̂, by adaptive quadrature on each side
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double kap = ctx->rc.kappa;
  for (int trial = 0; trial < 10; ++trial) {
    const double a = U(rng), b = U(rng), c2 = U(rng);
    const auto u = [=](double x) {
      return 2.0 + a * std::sin(3.0 * x) + b * x * x + 0.5 * c2 * std::cos(x);
    };
    const double in_xi = quad::integrate_positive(
        [&](double x) { return u(x) * std::exp(ctx->log_g(x)); }, -1.0, 1.0, quad::Peak::both);
    const double in_s = quad::integrate_positive(
        [&](double s) { return u(ctx->table.xi_of_s(s)) * hat_density(*ctx, s); }, -kap, kap,
        quad::Peak::both, {1e-10, 14});
    CHECK(std::abs(in_s - in_xi) <= 1e-6 * in_xi);
  }
}

TEST_CASE("xi and s solvers agree") {
  const auto ctx = ctx_at(0.2);
  const double T = 1.0 / ctx->rc.k;
  std::vector<double> err;
  for (int n : {201, 401}) {
    const auto gx = make_grid(ctx, Space::xi, n);
    const auto gs = make_grid(ctx, Space::s, n);
    const auto smooth = [](double x) { return 1.0 - 0.9 * std::sin(0.5 * M_PI * x); };
    const auto fx = field_from(gx, smooth);
    const auto fs = pushforward(fx, gs);
    const int steps = n == 201 ? 1000 : 2000;
    const auto tx = solve_xi(fx, T, steps);
    const auto ts = solve_s(fs, T, steps);
    const auto px = pushforward(tx.at(tx.stamps() - 1), gs);
    err.push_back(max_abs_diff(px.u, ts.u.back()));
  }
  CHECK(err[1] <= 5e-2);
  CHECK(err[1] < err[0]);
}

TEST_CASE("trajectory stamps") {
  const auto ctx = ctx_at(0.2);
  const auto g = make_grid(ctx, Space::s, 51);
  const auto traj = solve_s(step_field(g, 2.0, 0.0), 1.0, 20);
  CHECK(traj.stamps() == 21);
  CHECK(traj.t.front() == 0.0);
  CHECK(traj.t.back() == doctest::Approx(1.0));
  CHECK(traj.dt == doctest::Approx(0.05));
}
