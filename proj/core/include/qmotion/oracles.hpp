#pragma once

#include <vector>

#include "qmotion/params.hpp"

namespace qmotion {

/// Uniformly sampled complex time series on the scaled grid gt = i * dt.
struct ComplexTrajectory {
  std::vector<double> gt;
  std::vector<Complex> value;
  std::vector<Complex> derivative;  ///< (1/gamma) d(value)/dt where available
};

struct VolterraConfig {
  double t_max = 25.0;  ///< scaled horizon
  double dt = 5.0e-4;   ///< scaled step

  /// Throws ConfigError unless t_max > 0, 0 < dt <= 1e-2, t_max/dt <= 1e7.
  void validate() const;
};

/// Direct integration of the memory-kernel equation
///   dA~/dt = -int_0^t F(t - t') A~(t') dt',  A~(0) = 1,
/// by the product trapezoidal rule with an implicit diagonal solve.
/// The kernel depends on the lag only, so it is tabulated once on the grid
/// and the cost is O(N^2). Second order: halving dt cuts the error by
/// about 4x. Independent of the root-finding path.
ComplexTrajectory volterra_solve(const DimensionlessParams& dp,
                                 const VolterraConfig& cfg);

struct ModeGrid {
  int n_modes = 2000;
  double window_halfwidth = 20.0;  ///< in units of lambda_width
  double tau = 1.0e4;              ///< scaled mirror transit time gamma*tau
  double dt = 5.0e-3;              ///< RK4 step, scaled
  double t_max = 25.0;             ///< scaled horizon

  /// Throws ConfigError unless n_modes >= 100, window_halfwidth >= 20,
  /// tau >= 1e3, dt and t_max positive, and the recurrence guard
  /// delta_omega * t_max < pi/2 holds (delta_omega = grid spacing, scaled).
  void validate(const DimensionlessParams& dp) const;
};

/// Precomputed single-excitation mode ladder: one qubit amplitude coupled
/// to n discrete field modes in the interaction picture.
struct ModeSystem {
  double y2 = 0.0;
  double beta = 0.0;
  std::vector<double> omega;     ///< mode frequencies over gamma
  std::vector<double> detuning;  ///< (omega0 - omega_k)/gamma
  std::vector<double> coupling;  ///< sqrt(J(omega_k) d_omega)/gamma
  std::vector<double> phase;     ///< omega_k * tau reduced mod 2pi
};

struct DiscreteModeResult {
  ComplexTrajectory trajectory;  ///< full amplitude A(t) = A~(t) exp(-i y2 gt)
  double max_norm_drift = 0.0;   ///< max |1 - total norm| over the run
};

/// Builds the mode ladder for p: uniform grid of n_modes across the window
/// centered on the band, couplings sqrt(J(omega_k) d_omega), standing-wave
/// shape sin(omega_k (beta t - tau)) sampled along the trajectory.
ModeSystem build_mode_system(const CavityQubitParams& p, const ModeGrid& grid);

/// Fixed-step RK4 in the interaction picture. Deterministic: fixed serial
/// reduction order, no adaptivity. Norm drift is monitored and returned.
DiscreteModeResult integrate_mode_system(const ModeSystem& sys, double t_max,
                                         double dt);

/// build_mode_system + integrate_mode_system with grid validation.
DiscreteModeResult discrete_mode_solve(const CavityQubitParams& p,
                                       const ModeGrid& grid);

struct QuadratureOptions {
  double window_widths = 2.0e4;  ///< half-window over lambda_width, >= 1e3
  double rel_tol = 1.0e-6;
  int max_rounds = 8;
};

/// Memory kernel F(t, t') evaluated by direct frequency integration of the
/// spectral density times the mode correlation, over the finite window
/// omega0 +- W*lambda. The rapidly oscillating tau-dependent half of the
/// sin*sin product averages to zero for large mirror times and is dropped;
/// the surviving half is cos(omega beta (t-t')) / 2. Panels are graded
/// geometrically away from the Lorentzian peak and subdivided so no panel
/// spans more than about a quarter oscillation of exp(-i(omega-omega0)(t-t')).
/// t, t' in seconds with t >= t' >= 0; result in rad^2/s^2.
/// Throws QuadratureError if panel doubling fails to converge.
Complex kernel_quadrature(const CavityQubitParams& p, double t, double t_prime,
                          const QuadratureOptions& opt = {});

/// Lorentzian coupling density
///   J(omega) = (1/2pi) gamma lambda^2 / ((omega0 - omega - delta)^2 + lambda^2),
/// peak value gamma/2pi at omega = omega0 - delta, full integral gamma*lambda/2.
/// Requires omega > 0.
double spectral_density(const CavityQubitParams& p, double omega);

/// Stationary-qubit closed form at scaled time gt:
///   A~ = e^(-lb*gt/2) [cosh(d*gt/2) + (lb/d) sinh(d*gt/2)],
/// lb = lambda_bar/gamma, d = sqrt(lb^2 - y1). Evaluated as a balanced sum
/// of two exponentials (branch-independent, no overflow) with a series
/// switch near d = 0. dp.beta is ignored; the comparison against small-beta
/// solutions is exactly the continuity check this oracle serves.
Complex stationary_amplitude(const DimensionlessParams& dp, double gt);

}  // namespace qmotion
