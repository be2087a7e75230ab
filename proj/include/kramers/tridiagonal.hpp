#pragma once

#include <span>
#include <vector>

namespace kramers {

/// Solves the tridiagonal system
///   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]
/// (lower[0] and upper[n-1] are ignored). Each row is first divided by its
/// diagonal entry so the elimination runs on a unit-diagonal matrix even
/// when the raw entries span hundreds of orders of magnitude. Intended for
/// M-matrices; throws NumericalError on a non-positive pivot.
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

} // namespace kramers
