#include "kramers/particles.hpp"

#include "kramers/errors.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace kramers {

namespace {

constexpr std::size_t kBlock = 1024;

std::mt19937_64 block_engine(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  return std::mt19937_64(seq);
}

std::vector<double> bin_edges(int bins) {
  std::vector<double> e(bins + 1);
  for (int i = 0; i <= bins; ++i)
    e[i] = -1.0 + 2.0 * i / bins;
  e.back() = 1.0;
  return e;
}

int bin_of(double x, int bins) {
  const int b = static_cast<int>(std::floor((x + 1.0) * 0.5 * bins));
  return std::clamp(b, 0, bins - 1);
}

} // namespace

double reflect(double x) {
  if (!std::isfinite(x))
    throw NumericalError("reflect: non-finite position");
  while (x > 1.0 || x < -1.0) {
    if (x > 1.0)
      x = 2.0 - x;
    else
      x = -2.0 - x;
  }
  return x;
}

std::vector<double> sample_left_well(const EpsilonContext& ctx, std::size_t n, std::uint64_t seed) {
  constexpr int cells = 4000;
  std::vector<double> edge(cells + 1), cum(cells + 1, 0.0);
  for (int i = 0; i <= cells; ++i)
    edge[i] = -1.0 + static_cast<double>(i) / cells;
  edge.back() = 0.0;
  for (int i = 0; i < cells; ++i)
    cum[i + 1] = cum[i] + gamma_mass(ctx, edge[i], edge[i + 1]);
  auto eng = block_engine(seed, ~std::uint64_t{0});
  boost::random::uniform_01<double> unif;
  std::vector<double> x(n);
  for (auto& v : x) {
    const double target = unif(eng) * cum.back();
    const auto it = std::upper_bound(cum.begin(), cum.end(), target);
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - cum.begin()), cells) - 1;
    const double frac = (target - cum[i]) / (cum[i + 1] - cum[i]);
    v = edge[i] + frac * (edge[i + 1] - edge[i]);
  }
  return x;
}

ParticleRun simulate(const EpsilonContext& ctx, std::vector<double> x0, double T, double dt,
                     std::uint64_t seed, const ParticleOptions& opts) {
  if (x0.empty())
    throw ValidationError("simulate: need at least one particle");
  if (!(T > 0.0) || !(dt > 0.0))
    throw ValidationError("simulate: T and dt must be positive");
  if (opts.bins < 1)
    throw ValidationError("simulate: need at least one bin");
  if (opts.noise_scale < 0.0)
    throw ValidationError("simulate: noise scale must be non-negative");
  for (double x : x0)
    if (!(x >= -1.0 && x <= 1.0))
      throw ValidationError("simulate: initial positions must lie in [-1, 1]");

  const double drift_scale = ctx.tau / ctx.eps;
  double max_drift = 0.0;
  for (int i = 0; i <= 2000; ++i)
    max_drift = std::max(max_drift, std::abs(ctx.spec.dH(-1.0 + i / 1000.0)));
  max_drift *= drift_scale;
  if (max_drift * dt > 0.5)
    throw ValidationError("simulate: step too large, need max|drift| dt <= 0.5");

  const int steps = std::max(1, static_cast<int>(std::ceil(T / dt - 1e-9)));
  const double h = T / steps;
  const double sigma = opts.noise_scale * std::sqrt(2.0 * ctx.tau * h);

  // snapshot steps in increasing order, T last
  std::vector<double> snap_t;
  for (double s : opts.snapshots)
    if (s > 0.0 && s < T)
      snap_t.push_back(s);
  std::sort(snap_t.begin(), snap_t.end());
  snap_t.erase(std::unique(snap_t.begin(), snap_t.end()), snap_t.end());
  snap_t.push_back(T);
  std::vector<int> snap_step(snap_t.size());
  for (std::size_t k = 0; k < snap_t.size(); ++k)
    snap_step[k] = std::clamp(static_cast<int>(std::lround(snap_t[k] / h)), 1, steps);

  ParticleRun run;
  run.dt = h;
  run.steps = steps;
  const auto edges = bin_edges(opts.bins);
  for (std::size_t k = 0; k < snap_t.size(); ++k) {
    Histogram hg;
    hg.t = snap_step[k] * h;
    hg.edges = edges;
    hg.counts.assign(opts.bins, 0);
    hg.total = static_cast<std::int64_t>(x0.size());
    run.histograms.push_back(std::move(hg));
  }

  const bool fast = ctx.spec.is_default;
  const auto& dH = ctx.spec.dH;
  auto drift = [&](double x) {
    const double d = fast ? -4.0 * x * (1.0 - x * x) : dH(x);
    return -drift_scale * d;
  };
  const bool lm = opts.scheme == SdeScheme::leimkuhler_matthews;

  boost::random::normal_distribution<double> normal;
  for (std::size_t start = 0; start < x0.size(); start += kBlock) {
    auto eng = block_engine(seed, start / kBlock);
    const std::size_t stop = std::min(x0.size(), start + kBlock);
    for (std::size_t p = start; p < stop; ++p) {
      double x = x0[p];
      double r_prev = lm ? normal(eng) : 0.0;
      std::size_t next = 0;
      for (int n = 1; n <= steps; ++n) {
        const double r = normal(eng);
        const double noise = lm ? 0.5 * (r_prev + r) : r;
        x = reflect(x + drift(x) * h + sigma * noise);
        r_prev = r;
        while (next < snap_step.size() && snap_step[next] == n) {
          ++run.histograms[next].counts[bin_of(x, opts.bins)];
          ++next;
        }
      }
      x0[p] = x;
    }
  }
  run.final_positions = std::move(x0);
  return run;
}

PiecewiseCdf cdf_of(const Histogram& h) {
  if (h.total <= 0 || h.edges.size() != h.counts.size() + 1)
    throw ValidationError("cdf_of: malformed histogram");
  PiecewiseCdf c;
  c.x = h.edges;
  c.F.assign(h.edges.size(), 0.0);
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    acc += h.counts[i];
    c.F[i + 1] = static_cast<double>(acc) / static_cast<double>(h.total);
  }
  return c;
}

PiecewiseCdf cdf_of(const Field& f) {
  const auto& nodes = f.grid->nodes;
  const auto& M = f.grid->weights;
  const std::size_t n = nodes.size();
  PiecewiseCdf c;
  c.x.resize(n + 1);
  c.F.assign(n + 1, 0.0);
  c.x.front() = nodes.front();
  c.x.back() = nodes.back();
  for (std::size_t i = 1; i < n; ++i)
    c.x[i] = 0.5 * (nodes[i - 1] + nodes[i]);
  for (std::size_t i = 0; i < n; ++i)
    c.F[i + 1] = c.F[i] + M[i] * f.u[i];
  return c;
}

namespace {

// limits of a right-continuous piecewise-linear CDF at x
double eval_right(const PiecewiseCdf& c, double x) {
  if (x < c.x.front())
    return 0.0;
  if (x >= c.x.back())
    return c.F.back();
  const auto it = std::upper_bound(c.x.begin(), c.x.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - c.x.begin());
  const double x0 = c.x[j - 1], x1 = c.x[j];
  return c.F[j - 1] + (c.F[j] - c.F[j - 1]) * (x - x0) / (x1 - x0);
}

double eval_left(const PiecewiseCdf& c, double x) {
  if (x <= c.x.front())
    return 0.0;
  if (x > c.x.back())
    return c.F.back();
  const auto it = std::lower_bound(c.x.begin(), c.x.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - c.x.begin());
  const double x0 = c.x[j - 1], x1 = c.x[j];
  if (x1 == x0)
    return c.F[j - 1];
  return c.F[j - 1] + (c.F[j] - c.F[j - 1]) * (x - x0) / (x1 - x0);
}

// ∫_0^L |p + (q - p) t/L| dt
double abs_linear(double p, double q, double L) {
  if (p * q >= 0.0)
    return 0.5 * L * (std::abs(p) + std::abs(q));
  return 0.5 * L * (p * p + q * q) / (std::abs(p) + std::abs(q));
}

} // namespace

double w1_distance(const PiecewiseCdf& a, const PiecewiseCdf& b) {
  if (a.x.empty() || b.x.empty() || a.x.size() != a.F.size() || b.x.size() != b.F.size())
    throw ValidationError("w1_distance: malformed CDF");
  if (std::abs(a.F.back() - b.F.back()) > 1e-6)
    throw ValidationError("w1_distance: total masses differ");
  std::vector<double> xs(a.x);
  xs.insert(xs.end(), b.x.begin(), b.x.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double p = eval_right(a, xs[k]) - eval_right(b, xs[k]);
    const double q = eval_left(a, xs[k + 1]) - eval_left(b, xs[k + 1]);
    sum += abs_linear(p, q, xs[k + 1] - xs[k]);
  }
  return sum;
}

double empirical_distance(const Histogram& h, const Field& f) {
  if (f.grid->space != Space::xi)
    throw ValidationError("empirical_distance: field must live on the ξ-grid");
  return w1_distance(cdf_of(h), cdf_of(f));
}

} // namespace kramers
