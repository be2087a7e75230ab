#include "kramers/field.hpp"

#include "kramers/errors.hpp"

#include <cmath>

namespace kramers {

GridPtr make_grid(ContextPtr ctx, Space space, int n_nodes) {
  if (!ctx)
    throw ValidationError("make_grid: missing context");
  if (n_nodes < 3)
    throw ValidationError("make_grid: need at least 3 nodes");
  auto g = std::make_shared<Grid>();
  g->ctx = ctx;
  g->space = space;
  const double L = space == Space::xi ? 1.0 : ctx->rc.kappa;
  g->h = 2.0 * L / (n_nodes - 1);
  g->nodes.resize(n_nodes);
  for (int i = 0; i < n_nodes; ++i)
    g->nodes[i] = -L + g->h * i;
  g->nodes.front() = -L;
  g->nodes.back() = L;
  // symmetric nodes, so the centre lands on exactly 0 for odd n
  for (int i = 0; i < n_nodes / 2; ++i)
    g->nodes[n_nodes - 1 - i] = -g->nodes[i];
  if (n_nodes % 2 == 1)
    g->nodes[n_nodes / 2] = 0.0;
  g->weights = space == Space::xi ? xi_cell_masses(*ctx, g->nodes) : s_cell_masses(*ctx, g->nodes);
  return g;
}

double weighted_sum(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double y = a[i] * b[i] - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double Field::mass() const { return weighted_sum(u, grid->weights); }

Field make_field(GridPtr grid, std::vector<double> u) {
  if (!grid)
    throw ValidationError("make_field: missing grid");
  if (u.size() != grid->size())
    throw ValidationError("make_field: value count does not match the grid");
  for (double v : u)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw ValidationError("make_field: values must be finite and non-negative");
  return Field{std::move(grid), std::move(u)};
}

Field field_from(GridPtr grid, const std::function<double(double)>& f) {
  std::vector<double> u(grid->size());
  for (std::size_t i = 0; i < u.size(); ++i)
    u[i] = f(grid->nodes[i]);
  return make_field(std::move(grid), std::move(u));
}

Field constant_field(GridPtr grid, double c) {
  return make_field(grid, std::vector<double>(grid->size(), c));
}

Field step_field(GridPtr grid, double a, double b) {
  return field_from(grid, [a, b](double x) { return x < 0.0 ? a : (x > 0.0 ? b : 0.5 * (a + b)); });
}

} // namespace kramers
