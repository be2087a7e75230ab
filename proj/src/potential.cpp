#include "kramers/potential.hpp"

#include "kramers/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace kramers {

PotentialSpec default_potential() {
  PotentialSpec p;
  p.H = [](double x) {
    const double q = 1.0 - x * x;
    return q * q;
  };
  p.dH = [](double x) { return -4.0 * x * (1.0 - x * x); };
  p.d2H = [](double x) { return 12.0 * x * x - 4.0; };
  p.is_default = true;
  p.name = "default";
  return p;
}

PotentialSpec polynomial_potential(std::vector<double> coeffs) {
  if (coeffs.empty())
    throw ValidationError("polynomial_potential: empty coefficient list");
  auto horner = [](const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
      acc = acc * x + *it;
    return acc;
  };
  auto derive = [](const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t i = 1; i < c.size(); ++i)
      d.push_back(static_cast<double>(i) * c[i]);
    if (d.empty())
      d.push_back(0.0);
    return d;
  };
  const auto c1 = derive(coeffs);
  const auto c2 = derive(c1);

  PotentialSpec p;
  p.H = [coeffs, horner](double x) { return horner(coeffs, x); };
  p.dH = [c1, horner](double x) { return horner(c1, x); };
  p.d2H = [c2, horner](double x) { return horner(c2, x); };
  p.is_default = false;
  std::ostringstream os;
  os << "polynomial[";
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    os << (i ? "," : "") << coeffs[i];
  os << "]";
  p.name = os.str();
  return p;
}

ValidationReport validate(const PotentialSpec& spec, int n_samples) {
  if (n_samples < 3)
    throw ValidationError("validate: need at least 3 samples");
  if (!spec.H || !spec.dH || !spec.d2H)
    throw ValidationError("validate: potential is missing an evaluator");

  ValidationReport r;
  std::vector<double> xs(n_samples);
  for (int j = 0; j < n_samples; ++j)
    xs[j] = -1.0 + 2.0 * j / (n_samples - 1);

  double odd_part = 0.0;
  for (double x : xs)
    odd_part = std::max(odd_part, std::abs(spec.H(x) - spec.H(-x)));
  r.even = odd_part <= 1e-12;
  if (!r.even)
    r.failures.push_back("evenness: max |H(x) - H(-x)| = " + std::to_string(odd_part));

  const double e0 = std::abs(spec.H(0.0) - 1.0);
  const double e1 = std::max(std::abs(spec.H(1.0)), std::abs(spec.H(-1.0)));
  r.endpoint_values = e0 <= 1e-12 && e1 <= 1e-12;
  if (!r.endpoint_values)
    r.failures.push_back("endpoint values: |H(0) - 1| = " + std::to_string(e0) +
                         ", max |H(±1)| = " + std::to_string(e1));

  r.curvature_signs = spec.d2H(0.0) < 0.0 && spec.d2H(1.0) > 0.0;
  if (!r.curvature_signs)
    r.failures.push_back("curvature: need H''(0) < 0 < H''(1)");

  // Central differences on interior samples; step shrinks near the walls.
  double scale1 = 1.0, scale2 = 1.0;
  for (double x : xs) {
    scale1 = std::max(scale1, std::abs(spec.dH(x)));
    scale2 = std::max(scale2, std::abs(spec.d2H(x)));
  }
  double err1 = 0.0, err2 = 0.0;
  for (double x : xs) {
    const double room = 1.0 - std::abs(x);
    if (room <= 0.0)
      continue;
    const double h = std::min(1e-4, 0.5 * room);
    const double hp = spec.H(x + h), h0 = spec.H(x), hm = spec.H(x - h);
    err1 = std::max(err1, std::abs((hp - hm) / (2 * h) - spec.dH(x)) / scale1);
    err2 = std::max(err2, std::abs((hp - 2 * h0 + hm) / (h * h) - spec.d2H(x)) / scale2);
  }
  r.derivatives_consistent = err1 <= 1e-6 && err2 <= 1e-6;
  if (!r.derivatives_consistent)
    r.failures.push_back("derivatives: relative mismatch H' " + std::to_string(err1) +
                         ", H'' " + std::to_string(err2));
  return r;
}

ReactionConstants reaction_constants(const PotentialSpec& spec) {
  const double c0 = spec.d2H(0.0);
  const double c1 = spec.d2H(1.0);
  if (!(c0 < 0.0) || !(c1 > 0.0))
    throw ValidationError("reaction_constants: need H''(0) < 0 and H''(1) > 0");
  ReactionConstants rc;
  rc.k = std::sqrt(-c0 * c1) / std::numbers::pi;
  rc.kappa = 1.0 / rc.k;
  return rc;
}

} // namespace kramers
