#include "kramers/tridiagonal.hpp"

#include "kramers/errors.hpp"

namespace kramers {

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (lower.size() != n || upper.size() != n || rhs.size() != n)
    throw ValidationError("solve_tridiagonal: size mismatch");
  if (n == 0)
    return {};

  std::vector<double> c(n), d(n), x(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(diag[i] > 0.0))
      throw NumericalError("solve_tridiagonal: non-positive diagonal entry");
  }

  // Row-equilibrated Thomas sweep: row i reads a_i x_{i-1} + x_i + c_i x_{i+1} = d_i.
  double pivot = 1.0;
  c[0] = upper[0] / diag[0];
  d[0] = rhs[0] / diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double a = lower[i] / diag[i];
    pivot = 1.0 - a * c[i - 1];
    if (!(pivot > 0.0))
      throw NumericalError("solve_tridiagonal: non-positive pivot");
    c[i] = (i + 1 < n ? upper[i] / diag[i] : 0.0) / pivot;
    d[i] = (rhs[i] / diag[i] - a * d[i - 1]) / pivot;
  }
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;)
    x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

} // namespace kramers
