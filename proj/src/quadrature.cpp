#include "kramers/quadrature.hpp"

#include "kramers/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace kramers::quad {

namespace {

constexpr int kOrder = 20;

struct Rule {
  std::array<double, kOrder> x{};
  std::array<double, kOrder> w{};
};

// boost stores the non-negative half of a symmetric rule.
const Rule& rule() {
  static const Rule r = [] {
    using GL = boost::math::quadrature::gauss<double, kOrder>;
    const auto& abs = GL::abscissa();
    const auto& wts = GL::weights();
    Rule out;
    int k = 0;
    for (std::size_t i = 0; i < abs.size(); ++i) {
      if (abs[i] == 0.0) {
        out.x[k] = 0.0;
        out.w[k++] = wts[i];
        continue;
      }
      out.x[k] = -abs[i];
      out.w[k++] = wts[i];
      out.x[k] = abs[i];
      out.w[k++] = wts[i];
    }
    return out;
  }();
  return r;
}

std::vector<double> graded_edges(double a, double b, Peak peak, int levels, int split) {
  std::vector<double> base;
  const double len = b - a;
  switch (peak) {
  case Peak::none:
    base = {a, b};
    break;
  case Peak::right:
    base.push_back(a);
    for (int j = 1; j <= levels; ++j)
      base.push_back(b - len * std::ldexp(1.0, -j));
    base.push_back(b);
    break;
  case Peak::left:
    base.push_back(a);
    for (int j = levels; j >= 1; --j)
      base.push_back(a + len * std::ldexp(1.0, -j));
    base.push_back(b);
    break;
  case Peak::both: {
    const double mid = 0.5 * (a + b);
    auto l = graded_edges(a, mid, Peak::left, levels, 1);
    auto r = graded_edges(mid, b, Peak::right, levels, 1);
    base = l;
    base.insert(base.end(), r.begin() + 1, r.end());
    break;
  }
  }
  std::vector<double> edges;
  edges.reserve((base.size() - 1) * split + 1);
  for (std::size_t i = 0; i + 1 < base.size(); ++i)
    for (int q = 0; q < split; ++q)
      edges.push_back(base[i] + (base[i + 1] - base[i]) * q / split);
  edges.push_back(b);
  return edges;
}

double log_sum_panels(const std::function<double(double)>& log_f,
                      const std::vector<double>& edges) {
  const Rule& r = rule();
  std::vector<double> lv;
  std::vector<double> lw;
  lv.reserve((edges.size() - 1) * kOrder);
  lw.reserve(lv.capacity());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double half = 0.5 * (edges[i + 1] - edges[i]);
    if (half <= 0.0)
      continue;
    const double mid = 0.5 * (edges[i + 1] + edges[i]);
    for (int q = 0; q < kOrder; ++q) {
      lv.push_back(log_f(mid + half * r.x[q]));
      lw.push_back(std::log(half * r.w[q]));
    }
  }
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lv.size(); ++i)
    shift = std::max(shift, lv[i] + lw[i]);
  if (!std::isfinite(shift))
    return shift;
  double sum = 0.0;
  for (std::size_t i = 0; i < lv.size(); ++i)
    sum += std::exp(lv[i] + lw[i] - shift);
  return shift + std::log(sum);
}

} // namespace

double log_add(double x, double y) {
  if (x < y)
    std::swap(x, y);
  if (y == -std::numeric_limits<double>::infinity())
    return x;
  return x + std::log1p(std::exp(y - x));
}

double log_integrate(const std::function<double(double)>& log_f, double a, double b,
                     Peak peak, const Options& opts) {
  if (!(b > a))
    return -std::numeric_limits<double>::infinity();
  int levels = (peak == Peak::none) ? 0 : 4;
  int split = 1;
  double prev = log_sum_panels(log_f, graded_edges(a, b, peak, levels, split));
  for (int it = 0; it < opts.max_refinements; ++it) {
    if (peak != Peak::none)
      levels += 3;
    split *= 2;
    const double cur = log_sum_panels(log_f, graded_edges(a, b, peak, levels, split));
    if (std::abs(cur - prev) <= opts.rel_tol || (!std::isfinite(cur) && cur == prev))
      return cur;
    prev = cur;
  }
  throw NumericalError("log_integrate: no convergence on [" + std::to_string(a) + ", " +
                       std::to_string(b) + "]");
}

double integrate_positive(const std::function<double(double)>& f, double a, double b,
                          Peak peak, const Options& opts) {
  return std::exp(log_integrate([&](double x) { return std::log(f(x)); }, a, b, peak, opts));
}

double gauss_legendre_panel(const std::function<double(double)>& f, double a, double b) {
  const Rule& r = rule();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int q = 0; q < kOrder; ++q)
    sum += r.w[q] * f(mid + half * r.x[q]);
  return half * sum;
}

} // namespace kramers::quad
