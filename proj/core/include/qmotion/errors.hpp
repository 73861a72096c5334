#pragma once

#include <stdexcept>

namespace qmotion {

/// Physical or state parameters violate their documented constraints.
class InvalidParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base class for runtime numerical failures (CLI exit code 2).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The characteristic cubic has numerically coincident roots; the residue
/// expansion is ill-conditioned there and callers should switch to the
/// Volterra solver.
class DegenerateRootsError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A log-derivative was requested at (or too close to) a zero of the
/// amplitude, where decay rate and frequency shift diverge.
class AmplitudeZeroError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Adaptive quadrature failed to reach the requested tolerance.
class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Solver or run configuration violates its invariants.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be read, parsed, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qmotion
