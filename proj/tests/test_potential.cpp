#include "kramers/errors.hpp"
#include "kramers/potential.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace kramers;

TEST_CASE("default potential values") {
  const auto p = default_potential();
  CHECK(p.is_default);
  CHECK(p.H(0.0) == 1.0);
  CHECK(p.H(1.0) == 0.0);
  CHECK(p.H(-1.0) == 0.0);
  CHECK(p.d2H(0.0) == -4.0);
  CHECK(p.d2H(1.0) == 8.0);
  for (double x = -1.0; x <= 1.0; x += 0.01)
    CHECK(std::abs(p.dH(x) + p.dH(-x)) <= 1e-10);
}

TEST_CASE("validate") {
  CHECK(validate(default_potential(), 101).ok());

  PotentialSpec odd = default_potential();
  odd.H = [](double x) { return x; };
  const auto r = validate(odd, 101);
  CHECK_FALSE(r.even);
  CHECK_FALSE(r.ok());

  PotentialSpec bad_d = default_potential();
  bad_d.dH = [](double) { return 0.0; };
  const auto r2 = validate(bad_d, 101);
  CHECK(r2.even);
  CHECK_FALSE(r2.derivatives_consistent);
  CHECK_FALSE(r2.failures.empty());

  CHECK_THROWS_AS(validate(default_potential(), 2), ValidationError);
}

TEST_CASE("reaction constants") {
  const auto rc = reaction_constants(default_potential());
  CHECK(rc.k == doctest::Approx(oracle::k_default).epsilon(1e-15));
  CHECK(rc.kappa == doctest::Approx(oracle::kappa_default).epsilon(1e-15));
  CHECK(std::abs(rc.k * rc.kappa - 1.0) <= 2e-16);

  PotentialSpec p = default_potential();
  const double pi2 = std::numbers::pi * std::numbers::pi;
  p.d2H = [pi2](double x) { return x == 0.0 ? -pi2 : pi2; };
  CHECK(reaction_constants(p).k == doctest::Approx(std::numbers::pi).epsilon(1e-15));

  PotentialSpec flat = default_potential();
  flat.d2H = [](double) { return 1.0; };
  CHECK_THROWS_AS(reaction_constants(flat), ValidationError);
}

TEST_CASE("polynomial potential reproduces the default") {
  const auto p = polynomial_potential({1.0, 0.0, -2.0, 0.0, 1.0});
  const auto d = default_potential();
  CHECK_FALSE(p.is_default);
  for (double x = -1.0; x <= 1.0; x += 0.05) {
    CHECK(p.H(x) == doctest::Approx(d.H(x)).epsilon(1e-14).scale(1.0));
    CHECK(p.dH(x) == doctest::Approx(d.dH(x)).epsilon(1e-14).scale(1.0));
    CHECK(p.d2H(x) == doctest::Approx(d.d2H(x)).epsilon(1e-14).scale(1.0));
  }
  CHECK(validate(p, 101).ok());
  CHECK_THROWS_AS(polynomial_potential({}), ValidationError);
}
