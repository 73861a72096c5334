#pragma once

#include <complex>

namespace qmotion {

using Complex = std::complex<double>;

/// Physical inputs for a two-level qubit coupled to a single lossy cavity
/// band while moving along the cavity axis at constant speed. All
/// frequencies and rates are angular (rad/s); only their ratios enter the
/// reduced dynamics.
struct CavityQubitParams {
  double gamma = 33.3;     ///< flat-spectrum qubit decay rate
  double lambda_width = 0.333;  ///< Lorentzian width of the cavity coupling band
  double delta = 0.0;      ///< detuning of the band center below omega0
  double omega0 = 5.0949e10;  ///< qubit transition frequency, 1.53e9 * gamma
  double beta = 0.0;       ///< velocity ratio v/c

  /// Throws InvalidParameterError unless gamma, lambda_width, omega0 > 0,
  /// 0 <= beta < 1e-3 (non-relativistic guard) and every field is finite.
  /// delta may take either sign.
  void validate() const;
};

/// Reduced parameter set in units of gamma. The complex half-width
/// lambda_bar = lambda_width - i*delta and the motion factor
/// theta = beta*(lambda_bar + i*omega0) control the memory kernel; u_plus
/// and u_minus are the Doppler-split kernel exponents.
struct DimensionlessParams {
  double y1 = 0.0;    ///< lambda_width / gamma
  double y2 = 0.0;    ///< omega0 / gamma
  double y3 = 0.0;    ///< delta / gamma
  double beta = 0.0;  ///< v/c, carried through unchanged

  Complex lambda_bar_over_gamma{0.0, 0.0};  ///< y1 - i*y3
  Complex theta_over_gamma{0.0, 0.0};       ///< beta*(y1 - i*y3 + i*y2)
  Complex u_plus{0.0, 0.0};   ///< (1+beta)*y1 + i*beta*y2 - i*(1+beta)*y3
  Complex u_minus{0.0, 0.0};  ///< (1-beta)*y1 - i*beta*y2 - i*(1-beta)*y3
};

/// Validates p and reduces it to gamma-scaled form. Pure; thread-safe.
DimensionlessParams to_dimensionless(const CavityQubitParams& p);

}  // namespace qmotion
