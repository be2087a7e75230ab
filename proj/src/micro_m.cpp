#include "kramers/micro_m.hpp"

#include "kramers/errors.hpp"
#include "kramers/quadrature.hpp"
#include "kramers/tridiagonal.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <limits>
#include <optional>

namespace kramers {

namespace {

void check_inputs(double w, double um, double up, double kappa) {
  if (!(um > 0.0) || !(up > 0.0))
    throw ValidationError("micro problem: boundary values must be positive");
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw ValidationError("micro problem: kappa must be positive");
  if (!std::isfinite(w) || !std::isfinite(um) || !std::isfinite(up))
    throw ValidationError("micro problem: non-finite input");
}

bool positive_on(const MicroProfile& p) {
  if (!(p.um > 0.0) || !(p.up > 0.0))
    return false;
  if (p.A > 0.0) {
    const double vertex = -p.B / (2.0 * p.A);
    if (vertex > -p.kappa && vertex < p.kappa && !(p(vertex) > 0.0))
      return false;
  }
  return true;
}

double objective(const MicroProfile& p) {
  // u'² = w² + 4Au turns ½∫(w² + u'²)/u into w²∫1/u + 4Aκ
  double inv = 0.0;
  if (p.w != 0.0)
    inv = quad::integrate_positive([&](double s) { return 1.0 / p(s); }, -p.kappa, p.kappa,
                                   quad::Peak::both);
  return p.w * p.w * inv + 4.0 * p.A * p.kappa;
}

std::optional<MicroProfile> candidate(double w, double um, double up, double kappa, double A) {
  MicroProfile p;
  p.w = w;
  p.um = um;
  p.up = up;
  p.kappa = kappa;
  p.A = A;
  p.B = (up - um) / (2.0 * kappa);
  p.C = 0.5 * (up + um) - A * kappa * kappa;
  if (!positive_on(p))
    return std::nullopt;
  p.value = objective(p);
  return p;
}

} // namespace

double log_mean_inverse(double a, double b) {
  const double x = (b - a) / a;
  if (std::abs(x) < 1e-8)
    return (1.0 - 0.5 * x) / a;
  return std::log1p(x) / (b - a);
}

MicroProfile minimize_profile(double w, double um, double up, double kappa) {
  check_inputs(w, um, up, kappa);
  const double B = (up - um) / (2.0 * kappa);
  const double mbar = 0.5 * (up + um);
  const double rootD = std::sqrt(up * um + kappa * kappa * w * w);
  // 4κ²A² - 4 m̄ A + (B² - w²) = 0; minus root in cancellation-free form
  const double A_minus = (B - w) * (B + w) / (2.0 * (mbar + rootD));
  const double A_plus = (mbar + rootD) / (2.0 * kappa * kappa);

  auto lo = candidate(w, um, up, kappa, A_minus);
  auto hi = candidate(w, um, up, kappa, A_plus);
  if (lo && hi)
    return lo->value <= hi->value ? *lo : *hi;
  if (lo)
    return *lo;
  if (hi)
    return *hi;
  throw NumericalError("minimize_profile: no positive stationary profile");
}

double m_value(double w, double um, double up, double kappa) {
  return minimize_profile(w, um, up, kappa).value;
}

std::pair<double, double> m_bounds(double w, double um, double up, double kappa) {
  check_inputs(w, um, up, kappa);
  const double dlog = std::log(up) - std::log(um);
  const double L = log_mean_inverse(um, up);
  const double d = up - um;
  return {w * dlog, L * (4.0 * kappa * kappa * w * w + d * d) / (4.0 * kappa)};
}

BvpResult newton_bvp_m(double w, double um, double up, double kappa, int n) {
  check_inputs(w, um, up, kappa);
  if (n < 4)
    throw ValidationError("newton_bvp_m: need at least 4 cells");
  const double h = 2.0 * kappa / n;
  const double za = std::sqrt(um), zb = std::sqrt(up);
  BvpResult res;
  res.z.resize(n + 1);
  for (int i = 0; i <= n; ++i)
    res.z[i] = za + (zb - za) * i / n;
  const double q = 0.25 * w * w;

  auto residual_norm = [&](const std::vector<double>& z) {
    double r2 = 0.0;
    for (int i = 1; i < n; ++i) {
      const double r = -(z[i + 1] - 2 * z[i] + z[i - 1]) / (h * h) - q / (z[i] * z[i] * z[i]);
      r2 += r * r;
    }
    return std::sqrt(r2 * h);
  };

  const int m = n - 1;
  std::vector<double> lower(m), diag(m), upper(m), rhs(m);
  double rn = residual_norm(res.z);
  for (int it = 0; it < 100 && !res.converged; ++it) {
    for (int k = 0; k < m; ++k) {
      const int i = k + 1;
      const double zi = res.z[i];
      rhs[k] = (res.z[i + 1] - 2 * zi + res.z[i - 1]) / (h * h) + q / (zi * zi * zi);
      diag[k] = 2.0 / (h * h) + 3.0 * q / (zi * zi * zi * zi);
      lower[k] = upper[k] = -1.0 / (h * h);
    }
    const auto dz = solve_tridiagonal(lower, diag, upper, rhs);
    double step = 1.0;
    std::vector<double> trial(res.z);
    for (int ls = 0; ls < 60; ++ls) {
      bool ok = true;
      for (int k = 0; k < m; ++k) {
        trial[k + 1] = res.z[k + 1] + step * dz[k];
        ok = ok && trial[k + 1] > 0.0;
      }
      if (ok) {
        const double rt = residual_norm(trial);
        if (rt < rn || rt <= 1e-13)
          break;
      }
      step *= 0.5;
    }
    double dmax = 0.0;
    for (int k = 0; k < m; ++k)
      dmax = std::max(dmax, std::abs(trial[k + 1] - res.z[k + 1]));
    res.z = trial;
    rn = residual_norm(res.z);
    if (dmax <= 1e-14 * std::max(za, zb))
      res.converged = true;
  }
  if (!res.converged) {
    res.fallback = true;
    res.value = brute_force_m(w, um, up, kappa, n);
    return res;
  }
  // ∫ w²/(2z²) + 2 z'² : trapezoid for the first part, face differences for the second
  double val = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double wt = (i == 0 || i == n) ? 0.5 * h : h;
    val += wt * 0.5 * w * w / (res.z[i] * res.z[i]);
  }
  for (int i = 0; i < n; ++i) {
    const double d = (res.z[i + 1] - res.z[i]) / h;
    val += 2.0 * d * d * h;
  }
  res.value = val;
  return res;
}

namespace {

// Cell term (h/2) w² L(a,b) + (b - a) log(b/a) / (2h) with value, gradient, Hessian.
struct CellTerm {
  double f, fa, fb, faa, fab, fbb;
};

CellTerm cell_term(double a, double b, double w2, double h) {
  using GL = boost::math::quadrature::gauss<double, 20>;
  // L = ∫_0^1 dt / ((1-t) a + t b) and its derivatives
  double L = 0, La = 0, Lb = 0, Laa = 0, Lab = 0, Lbb = 0;
  const auto& x = GL::abscissa();
  const auto& wt = GL::weights();
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int sgn : {-1, 1}) {
      if (x[i] == 0.0 && sgn == 1)
        continue;
      const double t = 0.5 * (1.0 + sgn * x[i]);
      const double c = 0.5 * wt[i];
      const double v = (1 - t) * a + t * b;
      const double v2 = v * v, v3 = v2 * v;
      L += c / v;
      La -= c * (1 - t) / v2;
      Lb -= c * t / v2;
      Laa += 2 * c * (1 - t) * (1 - t) / v3;
      Lab += 2 * c * t * (1 - t) / v3;
      Lbb += 2 * c * t * t / v3;
    }
  }
  const double r = std::log(b / a);
  const double k1 = 0.5 * h * w2;
  const double k2 = 0.5 / h;
  CellTerm c;
  c.f = k1 * L + k2 * (b - a) * r;
  c.fa = k1 * La + k2 * (-r - b / a + 1.0);
  c.fb = k1 * Lb + k2 * (r + 1.0 - a / b);
  c.faa = k1 * Laa + k2 * (1.0 / a + b / (a * a));
  c.fab = k1 * Lab + k2 * (-1.0 / a - 1.0 / b);
  c.fbb = k1 * Lbb + k2 * (1.0 / b + a / (b * b));
  return c;
}

double total(const std::vector<double>& u, double w2, double h) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i)
    s += cell_term(u[i], u[i + 1], w2, h).f;
  return s;
}

} // namespace

double brute_force_m(double w, double um, double up, double kappa, int n) {
  check_inputs(w, um, up, kappa);
  if (n < 16)
    throw ValidationError("brute_force_m: need at least 16 cells");
  const double h = 2.0 * kappa / n;
  const double w2 = w * w;
  std::vector<double> u(n + 1);
  for (int i = 0; i <= n; ++i)
    u[i] = um + (up - um) * i / n;

  const int m = n - 1;
  std::vector<double> g(m), lower(m), diag(m), upper(m);
  double f = total(u, w2, h);
  for (int it = 0; it < 200; ++it) {
    std::fill(g.begin(), g.end(), 0.0);
    std::fill(diag.begin(), diag.end(), 0.0);
    std::fill(lower.begin(), lower.end(), 0.0);
    std::fill(upper.begin(), upper.end(), 0.0);
    for (int c = 0; c < n; ++c) {
      const auto t = cell_term(u[c], u[c + 1], w2, h);
      const int ka = c - 1, kb = c; // unknown indices of the two nodes
      if (ka >= 0) {
        g[ka] += t.fa;
        diag[ka] += t.faa;
      }
      if (kb < m) {
        g[kb] += t.fb;
        diag[kb] += t.fbb;
      }
      if (ka >= 0 && kb < m) {
        upper[ka] += t.fab;
        lower[kb] += t.fab;
      }
    }
    std::vector<double> rhs(m);
    for (int k = 0; k < m; ++k)
      rhs[k] = -g[k];
    const auto d = solve_tridiagonal(lower, diag, upper, rhs);
    double decrement = 0.0;
    for (int k = 0; k < m; ++k)
      decrement -= g[k] * d[k];
    if (decrement <= 1e-15 * std::max(1.0, std::abs(f)))
      break;
    double step = 1.0;
    std::vector<double> trial(u);
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      bool pos = true;
      for (int k = 0; k < m; ++k) {
        trial[k + 1] = u[k + 1] + step * d[k];
        pos = pos && trial[k + 1] > 0.0;
      }
      if (pos) {
        const double ft = total(trial, w2, h);
        if (ft <= f - 0.25 * step * decrement) {
          u = trial;
          f = ft;
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted)
      break;
  }
  return f;
}

std::vector<double> time_derivative(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t n = t.size();
  if (n != y.size() || n < 2)
    throw ValidationError("time_derivative: need at least two matching samples");
  std::vector<double> d(n);
  if (n == 2) {
    d[0] = d[1] = (y[1] - y[0]) / (t[1] - t[0]);
    return d;
  }
  // derivative of the parabola through three samples, at any of them
  auto three = [&](std::size_t a, std::size_t at) {
    const double x0 = t[a], x1 = t[a + 1], x2 = t[a + 2], x = t[at];
    return y[a] * (2 * x - x1 - x2) / ((x0 - x1) * (x0 - x2)) +
           y[a + 1] * (2 * x - x0 - x2) / ((x1 - x0) * (x1 - x2)) +
           y[a + 2] * (2 * x - x0 - x1) / ((x2 - x0) * (x2 - x1));
  };
  d[0] = three(0, 0);
  for (std::size_t i = 1; i + 1 < n; ++i)
    d[i] = three(i - 1, i);
  d[n - 1] = three(n - 3, n - 1);
  return d;
}

std::vector<MicroProfile> interpolate_time(const std::vector<double>& t,
                                           const std::vector<double>& um,
                                           const std::vector<double>& up, double kappa,
                                           double delta) {
  if (um.size() != t.size() || up.size() != t.size())
    throw ValidationError("interpolate_time: series lengths differ");
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!(um[i] >= delta) || !(up[i] >= delta))
      throw ValidationError("interpolate_time: boundary value below the positivity floor");
  const auto dm = time_derivative(t, um);
  std::vector<MicroProfile> out;
  out.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    out.push_back(minimize_profile(0.5 * dm[i], um[i], up[i], kappa));
  return out;
}

} // namespace kramers
