#pragma once

#include "qmotion/amplitude.hpp"

namespace qmotion {

/// Two-level density matrix in the {excited, ground} basis. Hermiticity and
/// unit trace make rho_aa real and fix rho_ba and rho_bb, so only the
/// excited population and the upper off-diagonal element are stored.
struct QubitState {
  double rho_aa = 0.0;
  Complex rho_ab{0.0, 0.0};

  /// Throws InvalidParameterError unless 0 <= rho_aa <= 1 and
  /// |rho_ab|^2 <= rho_aa (1 - rho_aa), both within 1e-9.
  void validate() const;
};

/// Reduced dynamics at scaled time gt: the population scales with |A~|^2
/// and the off-diagonal element with A~ exp(-i y2 gt). Exact for any
/// initial state of the qubit with the field in vacuum.
QubitState evolve_state(const QubitState& rho0, const AmplitudeSolution& sol,
                        double gt);

/// l1 coherence: sum of off-diagonal magnitudes, 2|rho_ab|.
double coherence(const QubitState& state);

/// Time-local decay rate over gamma, -2 Re[(dA~/dt)/(gamma A~)].
/// Throws AmplitudeZeroError when |A~| <= 1e-12.
double decay_rate(const AmplitudeSolution& sol, double gt);

/// Time-local frequency shift over gamma, 2 y2 - 2 Im[(dA~/dt)/(gamma A~)].
/// Same pole guard as decay_rate.
double lamb_shift(const AmplitudeSolution& sol, double gt);

/// One sample of both rates. At a pole of the log-derivative the sample is
/// tagged singular and carries NaN rates instead of clamped values.
struct RateSample {
  double gt = 0.0;
  double decay = 0.0;  ///< Gamma(t)/gamma
  double shift = 0.0;  ///< Omega(t)/gamma
  bool singular = false;
};

RateSample rate_sample(const AmplitudeSolution& sol, double gt);

/// Max-entry magnitude of d(rho)/dt minus the time-local master equation
/// right-hand side (commutator with the shifted Hamiltonian plus decay
/// dissipator), in units of gamma. The common optical phase of the
/// off-diagonal entry is factored out exactly before differencing.
double master_equation_residual(const AmplitudeSolution& sol,
                                const QubitState& rho0, double gt);

/// Trace distance of two qubit states, ||rho1 - rho2||_1 / 2.
double trace_distance(const QubitState& a, const QubitState& b);

}  // namespace qmotion
