#include "kramers/errors.hpp"
#include "kramers/micro_m.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace kramers;

namespace {
struct Triple {
  double w, um, up;
};

std::vector<Triple> random_triples(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> W(-3.0, 3.0), U(0.05, 4.0);
  std::vector<Triple> out;
  for (int i = 0; i < n; ++i)
    out.push_back({W(rng), U(rng), U(rng)});
  return out;
}
} // namespace

TEST_CASE("closed-form special cases") {
  CHECK(m_value(0.0, 1.0, 1.0, 1.0) == 0.0);
  const auto flat = minimize_profile(0.0, 1.3, 1.3, 0.7);
  for (double s = -0.7; s <= 0.7; s += 0.1)
    CHECK(flat(s) == doctest::Approx(1.3));

  // affine case
  const double e = std::numbers::e;
  const double ws = (e - 1.0) / 2.0;
  CHECK(m_value(ws, 1.0, e, 1.0) == doctest::Approx((e - 1.0) / 2.0).epsilon(1e-12));
  const auto aff = minimize_profile(ws, 1.0, e, 1.0);
  CHECK(std::abs(aff.A) <= 1e-12);

  // w = 0: √u affine
  CHECK(m_value(0.0, 1.0, 4.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  const auto z = minimize_profile(0.0, 1.0, 4.0, 1.0);
  for (double s = -1.0; s <= 1.0; s += 0.125) {
    const double zz = 1.5 + 0.5 * s;
    CHECK(z(s) == doctest::Approx(zz * zz).epsilon(1e-12));
  }
  CHECK(brute_force_m(0.0, 1.0, 4.0, 1.0, 2000) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("profile is positive and matches the boundary values") {
  for (const auto& [w, um, up] : random_triples(100, 1)) {
    const auto p = minimize_profile(w, um, up, 0.8);
    CHECK(p(-0.8) == doctest::Approx(um).epsilon(1e-10));
    CHECK(p(0.8) == doctest::Approx(up).epsilon(1e-10));
    for (int j = 0; j <= 40; ++j)
      CHECK(p(-0.8 + 0.04 * j) > 0.0);
  }
}

TEST_CASE("symmetry and convexity") {
  for (const auto& [w, um, up] : random_triples(100, 2))
    CHECK(m_value(w, um, up, 0.6) == doctest::Approx(m_value(w, up, um, 0.6)).epsilon(1e-10));

  const auto a = random_triples(100, 3), b = random_triples(100, 4);
  for (int i = 0; i < 100; ++i) {
    const double mid = m_value(0.5 * (a[i].w + b[i].w), 0.5 * (a[i].um + b[i].um),
                               0.5 * (a[i].up + b[i].up), 0.6);
    const double avg = 0.5 * (m_value(a[i].w, a[i].um, a[i].up, 0.6) +
                              m_value(b[i].w, b[i].um, b[i].up, 0.6));
    CHECK(mid <= avg + 1e-9);
  }
}

TEST_CASE("bounds") {
  {
    const auto [lo, hi] = m_bounds(1.0, 1.0, 1.0, 1.0);
    CHECK(lo == 0.0);
    CHECK(hi == doctest::Approx(1.0));
    const double m = m_value(1.0, 1.0, 1.0, 1.0);
    CHECK(m >= 0.0);
    CHECK(m <= 1.0);
    CHECK(brute_force_m(1.0, 1.0, 1.0, 1.0, 2000) == doctest::Approx(m).epsilon(1e-4));
  }
  {
    const double um = 0.7, up = 2.2, kap = 0.9, w = (up - um) / (2.0 * kap);
    const auto [lo, hi] = m_bounds(w, um, up, kap);
    const double m = m_value(w, um, up, kap);
    CHECK(lo == doctest::Approx(m).epsilon(1e-12));
    CHECK(hi == doctest::Approx(m).epsilon(1e-12));
  }
  for (const auto& [w, um, up] : random_triples(200, 5)) {
    const auto [lo, hi] = m_bounds(w, um, up, 0.55);
    const double m = m_value(w, um, up, 0.55);
    CHECK(m - lo >= -1e-9);
    CHECK(hi - m >= -1e-9);
  }
  CHECK(log_mean_inverse(2.0, 2.0) == doctest::Approx(0.5));
  CHECK(log_mean_inverse(2.0, 2.0 + 1e-13) == doctest::Approx(0.5));
}

TEST_CASE("brute force agrees with the closed form") {
  for (const auto& [w, um, up] : random_triples(50, 6)) {
    const double m = m_value(w, um, up, 0.55);
    CHECK(std::abs(brute_force_m(w, um, up, 0.55, 2000) - m) <= 1e-3 * m + 1e-12);
  }
}

TEST_CASE("brute force converges at second order") {
  for (const auto& [w, um, up] : random_triples(5, 7)) {
    const double m = m_value(w, um, up, 0.55);
    const double e1 = std::abs(brute_force_m(w, um, up, 0.55, 50) - m);
    const double e2 = std::abs(brute_force_m(w, um, up, 0.55, 100) - m);
    CHECK(e1 / e2 >= 3.0);
  }
  CHECK(brute_force_m(0.0, 1.0, 1.0, 1.0, 64) == doctest::Approx(0.0));
  const double e = std::numbers::e;
  CHECK(brute_force_m((e - 1.0) / 2.0, 1.0, e, 1.0, 400) ==
        doctest::Approx((e - 1.0) / 2.0).epsilon(1e-4));
  CHECK_THROWS_AS(brute_force_m(0.0, 1.0, 1.0, 1.0, 8), ValidationError);
}

TEST_CASE("Newton boundary value solver") {
  for (const auto& [w, um, up] : random_triples(20, 8)) {
    const auto r = newton_bvp_m(w, um, up, 0.55, 400);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(m_value(w, um, up, 0.55)).epsilon(1e-3));
  }
  CHECK(newton_bvp_m(0.0, 1.0, 1.0, 1.0, 100).value == doctest::Approx(0.0));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(m_value(1.0, 0.0, 1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(m_value(1.0, 1.0, -1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(m_value(1.0, 1.0, 1.0, 0.0), ValidationError);
}

TEST_CASE("time interpolation") {
  const double kap = 0.5553603672697958, k = 1.0 / kap;
  std::vector<double> t, um, up;
  for (int n = 0; n <= 200; ++n) {
    t.push_back(0.01 * n);
    const double d = std::exp(-2.0 * k * t.back());
    um.push_back(1.0 + 0.8 * d);
    up.push_back(1.0 - 0.8 * d);
  }
  // the limit ODE keeps every profile affine
  const auto prof = interpolate_time(t, um, up, kap);
  for (std::size_t n = 1; n + 1 < prof.size(); ++n) {
    CHECK(std::abs(prof[n].A) <= 1e-3 * std::abs(prof[n].B));
    CHECK(prof[n](-kap) == doctest::Approx(um[n]));
    CHECK(prof[n](kap) == doctest::Approx(up[n]));
  }

  const auto c = interpolate_time(t, std::vector<double>(t.size(), 1.2),
                                  std::vector<double>(t.size(), 1.2), kap);
  for (const auto& p : c) {
    CHECK(std::abs(p.w) <= 1e-12);
    CHECK(p(0.1) == doctest::Approx(1.2));
  }

  std::vector<double> wig_m, wig_p;
  for (double tt : t) {
    wig_m.push_back(1.0 + 0.3 * std::sin(5.0 * tt));
    wig_p.push_back(1.0 - 0.3 * std::sin(5.0 * tt));
  }
  const auto g = interpolate_time(t, wig_m, wig_p, kap);
  for (std::size_t n = 0; n < g.size(); ++n) {
    CHECK(g[n](-kap) == doctest::Approx(wig_m[n]).epsilon(1e-12));
    CHECK(g[n](kap) == doctest::Approx(wig_p[n]).epsilon(1e-12));
  }

  auto bad = um;
  bad[3] = 0.0;
  CHECK_THROWS_AS(interpolate_time(t, bad, up, kap), ValidationError);

  const auto d = time_derivative({0.0, 1.0, 3.0, 4.0}, {0.0, 1.0, 9.0, 16.0});
  CHECK(d[0] == doctest::Approx(0.0));
  CHECK(d[1] == doctest::Approx(2.0));
  CHECK(d[2] == doctest::Approx(6.0));
  CHECK(d[3] == doctest::Approx(8.0));
}
