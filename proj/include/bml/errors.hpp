#pragma once

#include <stdexcept>
#include <string>

namespace bml {

// Base for everything thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input outside an operation's mathematical domain.
struct DomainError : Error {
  using Error::Error;
};

// Operation called on an unsupported domain kind.
struct KindError : Error {
  using Error::Error;
};

// Point not in the symmetric normal form an operation requires.
struct SymmetryError : Error {
  using Error::Error;
};

// An iterative solve failed to converge or to stay bracketed.
struct ConvergenceError : Error {
  using Error::Error;
};

struct RootBracketError : Error {
  using Error::Error;
};

// A supposed unit vector is not normalized.
struct NormalizationError : Error {
  using Error::Error;
};

// Evaluation at (or too near) a pole of a map.
struct PoleError : Error {
  using Error::Error;
};

// Principal-branch power requested outside its half-plane.
struct BranchError : Error {
  using Error::Error;
};

// Asymptotic-regime inequality violated (reported, never clamped).
struct RegimeError : Error {
  using Error::Error;
};

// Constraint rows dependent at the current basis degree.
struct RankError : Error {
  using Error::Error;
};

// Bergman metric matrix not positive definite.
struct SingularMetricError : Error {
  using Error::Error;
};

// Gram factorization dropped below tolerance rank.
struct IllConditionedError : Error {
  using Error::Error;
};

// Construction-time invariant check failed.
struct ValidationError : Error {
  using Error::Error;
};

// Malformed run configuration.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace bml
