#include "kramers/measures.hpp"

#include "kramers/errors.hpp"
#include "kramers/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace kramers {

namespace {

double log_I(const PotentialSpec& spec, double eps) {
  return quad::log_integrate([&](double x) { return (spec.H(x) - 1.0) / eps; }, 0.0, 1.0,
                             quad::Peak::left);
}

void check_eps_positive(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw ValidationError("eps must be positive and finite");
}

// Root of phi(x) = ∫_lo^x w - c on [lo, hi], phi increasing with phi' = w.
template <class Partial, class Weight>
double bracketed_newton(double lo, double hi, double c, double piece, const Partial& partial,
                        const Weight& weight) {
  const double x0 = lo;
  double x = lo + (hi - lo) * std::clamp(c / piece, 0.0, 1.0);
  for (int it = 0; it < 80; ++it) {
    const double phi = partial(x0, x) - c;
    if (phi > 0.0)
      hi = x;
    else
      lo = x;
    double next = x - phi / weight(x);
    if (!(next > lo && next < hi))
      next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    if (step <= 1e-16 * std::max(1.0, std::abs(x)) || hi - lo <= 4e-16)
      break;
  }
  return x;
}

} // namespace

TransformTable::TransformTable(const PotentialSpec& spec, double eps, double kappa, int n_nodes)
    : spec_(spec), eps_(eps), kappa_(kappa) {
  if (n_nodes < 64)
    throw ValidationError("build_transform: need at least 64 nodes");
  check_eps_positive(eps);

  // half the nodes uniform on [0,1], half packed into the barrier core
  const int n_uniform = n_nodes / 2;
  const int n_core = n_nodes - n_uniform;
  const double core = std::min(1.0, 8.0 * std::sqrt(eps));
  std::vector<double> xs;
  xs.reserve(n_nodes + 1);
  for (int j = 0; j < n_uniform; ++j)
    xs.push_back(static_cast<double>(j) / (n_uniform - 1));
  for (int j = 0; j < n_core; ++j)
    xs.push_back(core * j / (n_core - 1));
  std::sort(xs.begin(), xs.end());
  const double min_gap = 1e-3 / n_nodes;
  for (double x : xs)
    if (xi_.empty() || x - xi_.back() > min_gap)
      xi_.push_back(x);
  xi_.back() = 1.0;

  const std::size_t n = xi_.size();
  std::vector<double> piece(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j)
    piece[j] = std::exp(quad::log_integrate([&](double x) { return (spec_.H(x) - 1.0) / eps_; },
                                            xi_[j], xi_[j + 1], quad::Peak::none));
  F_.assign(n, 0.0);
  D_.assign(n, 0.0);
  for (std::size_t j = 0; j + 1 < n; ++j)
    F_[j + 1] = F_[j] + piece[j];
  for (std::size_t j = n - 1; j-- > 0;)
    D_[j] = D_[j + 1] + piece[j];
  I_ = D_[0];
  log_I_ = std::log(I_);
  // the cumulative sums may stall in floating point far from their origin,
  // so strictness is checked on the pieces
  for (std::size_t j = 0; j + 1 < n; ++j)
    if (!(piece[j] > 0.0) || F_[j + 1] < F_[j] || D_[j + 1] > D_[j])
      throw NumericalError("build_transform: table is not strictly monotone");
}

double TransformTable::weight(double xi) const { return std::exp((spec_.H(xi) - 1.0) / eps_); }

double TransformTable::partial(double a, double b) const {
  if (b <= a)
    return 0.0;
  return quad::gauss_legendre_panel([&](double x) { return weight(x); }, a, b);
}

double TransformTable::s_nonneg(double xi) const {
  if (xi <= 0.0)
    return 0.0;
  if (xi >= 1.0)
    return kappa_;
  const auto it = std::upper_bound(xi_.begin(), xi_.end(), xi);
  const std::size_t j = static_cast<std::size_t>(it - xi_.begin()) - 1;
  const double p = partial(xi_[j], xi);
  const double head = F_[j] + p;
  if (head <= 0.5 * I_)
    return kappa_ * head / I_;
  return kappa_ - kappa_ * std::max(0.0, D_[j] - p) / I_;
}

double TransformTable::xi_nonneg(double s) const {
  if (s <= 0.0)
    return 0.0;
  if (s >= kappa_)
    return 1.0;
  auto w = [&](double x) { return weight(x); };
  auto part = [&](double a, double b) { return partial(a, b); };
  std::size_t j;
  double c;
  if (s <= 0.5 * kappa_) {
    const double target = s * I_ / kappa_;
    const auto it = std::upper_bound(F_.begin(), F_.end(), target);
    j = std::min<std::size_t>(static_cast<std::size_t>(it - F_.begin()) - 1, xi_.size() - 2);
    c = target - F_[j];
  } else {
    const double target = (kappa_ - s) * I_ / kappa_;
    // D is decreasing: first node with D < target, step back one
    const auto it = std::upper_bound(D_.begin(), D_.end(), target, std::greater<>());
    j = std::min<std::size_t>(static_cast<std::size_t>(it - D_.begin()) - 1, xi_.size() - 2);
    c = D_[j] - target;
  }
  const double piece = F_[j + 1] - F_[j];
  return bracketed_newton(xi_[j], xi_[j + 1], c, piece, part, w);
}

double TransformTable::s_of_xi(double xi) const {
  return xi < 0.0 ? -s_nonneg(-xi) : s_nonneg(xi);
}

double TransformTable::xi_of_s(double s) const {
  return s < 0.0 ? -xi_nonneg(-s) : xi_nonneg(s);
}

std::vector<std::pair<double, double>> TransformTable::nodes() const {
  std::vector<std::pair<double, double>> out;
  const std::size_t n = xi_.size();
  out.reserve(2 * n - 1);
  for (std::size_t j = n; j-- > 1;)
    out.emplace_back(-xi_[j], -s_nonneg(xi_[j]));
  for (std::size_t j = 0; j < n; ++j)
    out.emplace_back(xi_[j], s_nonneg(xi_[j]));
  return out;
}

double partition_Z(const PotentialSpec& spec, double eps) {
  check_eps_positive(eps);
  return std::exp(
      quad::log_integrate([&](double x) { return -spec.H(x) / eps; }, -1.0, 1.0, quad::Peak::both));
}

namespace {
double log_tau(const PotentialSpec& spec, double eps, double log_Z, double kappa) {
  if (1.0 / eps > 700.0 && !std::isfinite(std::exp(-1.0 / eps)))
    throw NumericalError("time_scale_tau: barrier exponent out of range");
  return log_Z - std::log(kappa) + 1.0 / eps + log_I(spec, eps);
}
} // namespace

double time_scale_tau(const PotentialSpec& spec, double eps) {
  check_eps_positive(eps);
  const auto rc = reaction_constants(spec);
  return std::exp(log_tau(spec, eps, std::log(partition_Z(spec, eps)), rc.kappa));
}

double watson_ratio(const PotentialSpec& spec, double eps) {
  check_eps_positive(eps);
  const auto rc = reaction_constants(spec);
  const double lt = log_tau(spec, eps, std::log(partition_Z(spec, eps)), rc.kappa);
  return std::exp(lt - std::log(eps) - 1.0 / eps);
}

TransformTable build_transform(const PotentialSpec& spec, double eps, int n_nodes) {
  const auto rc = reaction_constants(spec);
  return TransformTable(spec, eps, rc.kappa, n_nodes);
}

EpsilonContext build_context(const PotentialSpec& spec, double eps, int n_nodes) {
  if (!(eps >= 0.02 && eps <= 1.0))
    throw ValidationError("eps must lie in [0.02, 1]");
  const auto report = validate(spec, 101);
  if (!report.ok()) {
    std::string msg = "potential failed validation:";
    for (const auto& f : report.failures)
      msg += " " + f + ";";
    throw ValidationError(msg);
  }
  EpsilonContext ctx;
  ctx.spec = spec;
  ctx.rc = reaction_constants(spec);
  ctx.eps = eps;
  ctx.Z = partition_Z(spec, eps);
  ctx.log_Z = std::log(ctx.Z);
  ctx.table = TransformTable(spec, eps, ctx.rc.kappa, n_nodes);
  ctx.log_tau = ctx.log_Z - std::log(ctx.rc.kappa) + 1.0 / eps + ctx.table.log_I();
  ctx.tau = std::exp(ctx.log_tau);
  return ctx;
}

double log_hat_density(const EpsilonContext& ctx, double s) {
  if (std::abs(s) > ctx.rc.kappa * (1.0 + 1e-12))
    throw ValidationError("hat_density: s outside [-kappa, kappa]");
  return ctx.log_tau + 2.0 * ctx.log_g(ctx.table.xi_of_s(s));
}

double hat_density(const EpsilonContext& ctx, double s) {
  return std::max(std::exp(log_hat_density(ctx, s)), ctx.ghat_floor);
}

double gamma_mass(const EpsilonContext& ctx, double a, double b) {
  if (b <= a)
    return 0.0;
  auto lg = [&](double x) { return ctx.log_g(x); };
  if (a < 0.0 && b > 0.0)
    return gamma_mass(ctx, a, 0.0) + gamma_mass(ctx, 0.0, b);
  const auto peak = (b <= 0.0) ? quad::Peak::left : quad::Peak::right;
  return std::exp(quad::log_integrate(lg, a, b, peak));
}

namespace {
std::vector<double> masses_from_edges(const EpsilonContext& ctx, const std::vector<double>& xe) {
  std::vector<double> m(xe.size() - 1);
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = gamma_mass(ctx, xe[i], xe[i + 1]);
  return m;
}

std::vector<double> cell_edges(const std::vector<double>& nodes) {
  if (nodes.size() < 2)
    throw ValidationError("cell masses: need at least two nodes");
  std::vector<double> e(nodes.size() + 1);
  e.front() = nodes.front();
  e.back() = nodes.back();
  for (std::size_t i = 1; i < nodes.size(); ++i)
    e[i] = 0.5 * (nodes[i - 1] + nodes[i]);
  return e;
}
} // namespace

std::vector<double> xi_cell_masses(const EpsilonContext& ctx, const std::vector<double>& nodes) {
  return masses_from_edges(ctx, cell_edges(nodes));
}

std::vector<double> s_cell_masses(const EpsilonContext& ctx, const std::vector<double>& nodes) {
  auto e = cell_edges(nodes);
  for (double& x : e)
    x = ctx.table.xi_of_s(x);
  return masses_from_edges(ctx, e);
}

} // namespace kramers
