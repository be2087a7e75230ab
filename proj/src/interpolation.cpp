#include "kramers/interpolation.hpp"

#include "kramers/errors.hpp"

#include <algorithm>
#include <cmath>

namespace kramers {

double hermite(double t, double x0, double x1, double y0, double y1, double d0, double d1) {
  const double h = x1 - x0;
  const double u = (t - x0) / h;
  const double u2 = u * u;
  const double u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * d0 + (-2 * u3 + 3 * u2) * y1 +
         (u3 - u2) * h * d1;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n)
    throw ValidationError("MonotoneCubic: need at least two matching nodes");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(x_[i + 1] > x_[i]))
      throw ValidationError("MonotoneCubic: abscissae must be strictly increasing");

  std::vector<double> secant(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    secant[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);

  d_.assign(n, 0.0);
  if (n == 2) {
    d_[0] = d_[1] = secant[0];
    return;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    // three-point derivative of the interpolating parabola
    d_[i] = (secant[i - 1] * h1 + secant[i] * h0) / (h0 + h1);
  }
  {
    const double h0 = x_[1] - x_[0];
    const double h1 = x_[2] - x_[1];
    d_[0] = ((2 * h0 + h1) * secant[0] - h0 * secant[1]) / (h0 + h1);
    const double g0 = x_[n - 1] - x_[n - 2];
    const double g1 = x_[n - 2] - x_[n - 3];
    d_[n - 1] = ((2 * g0 + g1) * secant[n - 2] - g0 * secant[n - 3]) / (g0 + g1);
  }

  for (std::size_t i = 0; i < n; ++i) {
    const double sl = i > 0 ? secant[i - 1] : secant[i];
    const double sr = i + 1 < n ? secant[i] : secant[i - 1];
    if (sl * sr <= 0.0 || d_[i] * sl <= 0.0) {
      d_[i] = 0.0;
      continue;
    }
    const double cap = 3.0 * std::min(std::abs(sl), std::abs(sr));
    if (std::abs(d_[i]) > cap)
      d_[i] = std::copysign(cap, d_[i]);
  }
}

double MonotoneCubic::operator()(double t) const {
  if (t <= x_.front())
    return y_.front();
  if (t >= x_.back())
    return y_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  return hermite(t, x_[i], x_[i + 1], y_[i], y_[i + 1], d_[i], d_[i + 1]);
}

} // namespace kramers
