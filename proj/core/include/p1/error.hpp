#pragma once

#include <stdexcept>
#include <string>

namespace p1 {

/// Base class of every exception raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the documented domain of an operation (CLI exit code 2).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// z lies on the cut of the principal branch of (-24 z)^{5/4}.
class BranchCutError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A linear coefficient of a formal recursion vanished where the
/// normalization cannot absorb it.
class ResonanceError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver (Newton, contraction, ansatz search) failed.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A located singularity does not fit the double-pole model.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// The energy functional drifted beyond the configured tolerance.
class EnergyDriftError : public Error {
 public:
  using Error::Error;
};

}  // namespace p1
