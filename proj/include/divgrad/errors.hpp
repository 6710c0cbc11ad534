#pragma once

#include <stdexcept>
#include <string>

namespace divgrad {

/// Base class of everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A value left the mathematical domain (non-positive or non-finite component).
struct DomainError : Error {
  using Error::Error;
};

/// Two fields (or a matrix and a field) have incompatible lengths.
struct ShapeError : Error {
  using Error::Error;
};

/// A divergence parameter lies in an exclusion zone or outside its admissible set.
struct ParamError : Error {
  using Error::Error;
};

/// Deformed-logarithm parameters violating the admissibility conditions.
struct InadmissibleParams : ParamError {
  using ParamError::ParamError;
};

/// Sign pattern that cannot occur for any real parameter choice.
struct InfeasibleCase : Error {
  using Error::Error;
};

/// Backtracking line search exhausted its budget or was handed an ascent direction.
struct LineSearchFailure : Error {
  using Error::Error;
};

/// A gradient decomposition is inconsistent or unusable for the requested update.
struct NonDescent : Error {
  using Error::Error;
};

/// A 1-D scan found no interior minimum inside the requested bracket.
struct BracketError : Error {
  using Error::Error;
};

}  // namespace divgrad
