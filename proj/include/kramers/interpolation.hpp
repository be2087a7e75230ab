#pragma once

#include <span>
#include <vector>

namespace kramers {

/// Piecewise-cubic Hermite interpolant through (x_i, y_i) with x strictly
/// increasing. Node slopes start from three-point centered differences
/// (exact for quadratics) and are limited Fritsch-Carlson style, so the
/// interpolant is monotone wherever the data are and never overshoots
/// the data range between neighbouring nodes.
class MonotoneCubic {
public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  /// Clamps t to [x_front, x_back].
  double operator()(double t) const;

  std::span<const double> nodes() const { return x_; }

private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;
};

/// Cubic Hermite on one interval given end values and end slopes.
double hermite(double t, double x0, double x1, double y0, double y1, double d0, double d1);

} // namespace kramers
