#include "qmotion/dynamics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qmotion/errors.hpp"

namespace qmotion {

void QubitState::validate() const {
  if (!std::isfinite(rho_aa) || !std::isfinite(rho_ab.real()) ||
      !std::isfinite(rho_ab.imag())) {
    throw InvalidParameterError("qubit state entries must be finite");
  }
  const double tol = 1e-9;
  if (rho_aa < -tol || rho_aa > 1.0 + tol) {
    throw InvalidParameterError("rho_aa must lie in [0, 1]");
  }
  // Positivity of the 2x2 density matrix: |rho_ab|^2 <= rho_aa * rho_bb.
  const double rho_bb = 1.0 - rho_aa;
  const double off = std::norm(rho_ab);
  if (off > rho_aa * rho_bb + tol) {
    throw InvalidParameterError("qubit state violates positivity");
  }
}

QubitState evolve_state(const QubitState& rho0, const AmplitudeSolution& sol,
                        double gt) {
  rho0.validate();
  const Complex a = sol.amplitude(gt);
  QubitState rho;
  rho.rho_aa = rho0.rho_aa * std::norm(a);
  // Rotating frame: the optical phase exp(-i y2 gt) multiplies the slowly
  // varying amplitude.
  const Complex phase = std::exp(Complex{0.0, -sol.params().y2 * gt});
  rho.rho_ab = rho0.rho_ab * a * phase;
  return rho;
}

double coherence(const QubitState& rho) { return 2.0 * std::abs(rho.rho_ab); }

double decay_rate(const AmplitudeSolution& sol, double gt) {
  const Complex a = sol.amplitude(gt);
  if (std::abs(a) <= 1e-12) {
    std::ostringstream os;
    os << "amplitude vanishes at gt = " << gt << "; decay rate singular";
    throw AmplitudeZeroError(os.str());
  }
  const Complex ratio = sol.amplitude_derivative(gt) / a;
  return -2.0 * ratio.real();
}

double lamb_shift(const AmplitudeSolution& sol, double gt) {
  const Complex a = sol.amplitude(gt);
  if (std::abs(a) <= 1e-12) {
    std::ostringstream os;
    os << "amplitude vanishes at gt = " << gt << "; lamb shift singular";
    throw AmplitudeZeroError(os.str());
  }
  const Complex ratio = sol.amplitude_derivative(gt) / a;
  return 2.0 * sol.params().y2 - 2.0 * ratio.imag();
}

RateSample rate_sample(const AmplitudeSolution& sol, double gt) {
  RateSample s;
  s.gt = gt;
  const Complex a = sol.amplitude(gt);
  if (std::abs(a) <= 1e-12) {
    s.singular = true;
    s.decay = std::numeric_limits<double>::quiet_NaN();
    s.shift = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  const Complex ratio = sol.amplitude_derivative(gt) / a;
  s.singular = false;
  s.decay = -2.0 * ratio.real();
  s.shift = 2.0 * sol.params().y2 - 2.0 * ratio.imag();
  return s;
}

double master_equation_residual(const AmplitudeSolution& sol,
                                const QubitState& rho0, double gt) {
  rho0.validate();
  // Work with the slowly varying off-diagonal element: the optical phase
  // exp(-i y2 gt) is factored out exactly, so the residual reflects only the
  // time-convolutionless generator, not a fast rotation at y2 ~ 1e7.
  const Complex a = sol.amplitude(gt);
  if (std::abs(a) <= 1e-12) {
    throw AmplitudeZeroError("master equation residual singular at amplitude zero");
  }
  const Complex ratio = sol.amplitude_derivative(gt) / a;
  const double rate = -2.0 * ratio.real();
  const double shift_slow = -2.0 * ratio.imag();  // lamb_shift minus 2 y2

  const double m = std::norm(a);
  const double paa = rho0.rho_aa * m;
  const Complex pab = rho0.rho_ab * a;

  // d/dt rho_aa = rho_aa(0) * d|A|^2/dt; generator predicts -rate * rho_aa.
  const double daa = rho0.rho_aa * 2.0 * (std::conj(a) * sol.amplitude_derivative(gt)).real();
  const double res_aa = daa + rate * paa;

  // d/dt pab = rho_ab(0) * A'; generator predicts (-i*shift_slow/2 - rate/2) pab.
  const Complex dab = rho0.rho_ab * sol.amplitude_derivative(gt);
  const Complex gen = (Complex{0.0, -0.5 * shift_slow} - 0.5 * rate) * pab;
  const double res_ab = std::abs(dab - gen);

  return std::max(std::abs(res_aa), res_ab);
}

double trace_distance(const QubitState& a, const QubitState& b) {
  // For 2x2 Hermitian traceless difference: D = sqrt(dz^2 + |doff|^2) where
  // dz = a.rho_aa - b.rho_aa.
  const double dz = a.rho_aa - b.rho_aa;
  const Complex doff = a.rho_ab - b.rho_ab;
  return std::sqrt(dz * dz + std::norm(doff));
}

}  // namespace qmotion
