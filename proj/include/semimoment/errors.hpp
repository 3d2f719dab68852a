#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace semimoment {

/// Base of every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid argument: dimension mismatch, bad sizes, nonpositive weights.
struct ArgumentError : Error {
  using Error::Error;
};

/// A functional was asked for a moment beyond its degree budget.
struct DegreeError : Error {
  using Error::Error;
};

/// A point lies outside the admissible domain (e.g. lambda outside the box of ranges).
struct DomainError : Error {
  using Error::Error;
};

/// Hard size caps (preorder generator blow-up).
struct CapacityError : Error {
  using Error::Error;
};

/// Unknown catalog name.
struct LookupError : Error {
  using Error::Error;
};

/// Sampling produced nothing to estimate from.
struct EstimationError : Error {
  using Error::Error;
};

/// Moment matrix with empty numerical range.
struct DegenerateError : Error {
  using Error::Error;
};

/// Indefinite Hankel handed to the quadrature reconstruction.
struct InfeasibleError : Error {
  using Error::Error;
};

/// An atom of a measure violates membership in the semi-algebraic set.
struct MembershipError : Error {
  using Error::Error;
};

/// Malformed JSON input.
struct FormatError : Error {
  using Error::Error;
};

/// One leg of a counterexample certificate failed.
struct VerificationError : Error {
  VerificationError(std::string leg_name, const std::string& what)
      : Error("verification leg '" + leg_name + "' failed: " + what), leg(std::move(leg_name)) {}
  std::string leg;
};

/// Iterative search stopped before reaching the requested residual.
struct NonConvergenceError : Error {
  NonConvergenceError(const std::string& what, std::vector<double> best, double best_residual)
      : Error(what), best_iterate(std::move(best)), residual(best_residual) {}
  std::vector<double> best_iterate;
  double residual;
};

}  // namespace semimoment
