#pragma once

#include "kramers/measures.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace kramers {

enum class Space { xi, s };

using ContextPtr = std::shared_ptr<const EpsilonContext>;

/// Uniform node grid on Ξ = [-1, 1] or S = [-κ, κ] with γ_ε cell masses as
/// weights (end cells are half cells).
struct Grid {
  ContextPtr ctx;
  Space space = Space::s;
  std::vector<double> nodes;
  std::vector<double> weights;
  double h = 0.0;

  std::size_t size() const { return nodes.size(); }
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(ContextPtr ctx, Space space, int n_nodes);

/// Density u with respect to γ_ε sampled at grid nodes.
struct Field {
  GridPtr grid;
  std::vector<double> u;

  double mass() const;
};

/// Throws ValidationError on size mismatch or a negative / non-finite value.
Field make_field(GridPtr grid, std::vector<double> u);
Field field_from(GridPtr grid, const std::function<double(double)>& f);
Field constant_field(GridPtr grid, double c);
/// a on the left half, b on the right half, (a+b)/2 at the centre node.
Field step_field(GridPtr grid, double a, double b);

struct Trajectory {
  GridPtr grid;
  std::vector<double> t;
  std::vector<std::vector<double>> u;
  double dt = 0.0;

  std::size_t stamps() const { return t.size(); }
  Field at(std::size_t n) const { return Field{grid, u.at(n)}; }
  double mass(std::size_t n) const { return at(n).mass(); }
};

/// Σ_i a_i b_i with compensated summation.
double weighted_sum(const std::vector<double>& a, const std::vector<double>& b);

} // namespace kramers
