#pragma once

#include <stdexcept>
#include <string>

namespace foloc {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad files, violated preconditions, invalid configuration.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed (non-convergence, blow-up, singular system).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Newton iteration for the power-flow equilibrium did not converge.
class NoSynchronousState : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A nonlinear run slipped a phase across an edge.
class LossOfSynchrony : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Integrated state left the finite/bounded region.
class Divergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// 2D correlation of a constant motif is undefined.
class DegenerateMotif : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace foloc
