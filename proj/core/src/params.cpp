#include "qmotion/params.hpp"

#include <cmath>
#include <string>

#include "qmotion/errors.hpp"

namespace qmotion {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidParameterError(msg);
}

}  // namespace

void CavityQubitParams::validate() const {
  require(std::isfinite(gamma) && std::isfinite(lambda_width) &&
              std::isfinite(delta) && std::isfinite(omega0) &&
              std::isfinite(beta),
          "cavity-qubit parameters must be finite");
  require(gamma > 0.0, "gamma must be positive");
  require(lambda_width > 0.0, "lambda_width must be positive");
  require(omega0 > 0.0, "omega0 must be positive");
  require(beta >= 0.0, "beta must be non-negative");
  require(beta < 1.0e-3, "beta must stay below 1e-3 (non-relativistic regime)");
}

DimensionlessParams to_dimensionless(const CavityQubitParams& p) {
  p.validate();
  DimensionlessParams d;
  d.y1 = p.lambda_width / p.gamma;
  d.y2 = p.omega0 / p.gamma;
  d.y3 = p.delta / p.gamma;
  d.beta = p.beta;
  d.lambda_bar_over_gamma = Complex{d.y1, -d.y3};
  d.theta_over_gamma = p.beta * Complex{d.y1, d.y2 - d.y3};
  d.u_plus = Complex{(1.0 + p.beta) * d.y1, p.beta * d.y2 - (1.0 + p.beta) * d.y3};
  d.u_minus = Complex{(1.0 - p.beta) * d.y1, -p.beta * d.y2 - (1.0 - p.beta) * d.y3};
  return d;
}

}  // namespace qmotion
