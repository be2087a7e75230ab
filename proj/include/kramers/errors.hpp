#pragma once

#include <stdexcept>
#include <string>

namespace kramers {

/// Bad input: violated precondition, malformed config, unknown option.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to meet its contract (non-convergence,
/// broken monotonicity, a pivot that should have been positive).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace kramers
