#pragma once

#include <array>

#include "qmotion/params.hpp"

namespace qmotion {

/// Coefficients of the monic characteristic cubic
///   q^3 + c2 q^2 + c1 q + c0 = 0
/// whose roots (in units of gamma) are the decay exponents of the
/// excited-state amplitude in the rotating frame.
struct CubicCoefficients {
  Complex c2{0.0, 0.0};
  Complex c1{0.0, 0.0};
  Complex c0{0.0, 0.0};
};

/// c2 = 2(y1 - i y3), c1 = u+ u- + y1/4, c0 = y1 (y1 - i y3)/4.
/// The y1/4 terms carry the kernel normalization F(0) = gamma*lambda/4.
CubicCoefficients cubic_coefficients(const DimensionlessParams& dp);

struct CubicRoots {
  std::array<Complex, 3> q{};
};

/// All three roots of the monic cubic with complex coefficients, ordered by
/// (real, imaginary) ascending. Cardano on the depressed cubic with the
/// larger-magnitude branch of the discriminant, then Newton polish.
///
/// Guarantees |q^3 + c2 q^2 + c1 q + c0| < 1e-10 * max(1, |q|^3) per root.
/// Throws DegenerateRootsError when min pairwise separation falls below
/// 1e-8 * max|q| (or all roots vanish); callers fall back to the Volterra
/// solver in that case.
CubicRoots solve_cubic(Complex c2, Complex c1, Complex c0);

/// Rotating-frame amplitude as a sum of three exponentials,
///   A~(t) = sum_i r_i exp(q_i * gamma t),
/// with residues r_i = (q_i+u+)(q_i+u-) / prod_{j!=i}(q_i - q_j).
/// The residues satisfy sum r_i = 1 and sum r_i q_i = 0, so A~(0) = 1 and
/// dA~/dt(0) = 0.
class AmplitudeSolution {
 public:
  /// Computes roots and residues for dp. Throws DegenerateRootsError via
  /// solve_cubic on numerically confluent roots.
  explicit AmplitudeSolution(const DimensionlessParams& dp);

  /// A~ at scaled time gt >= 0. |A~| never exceeds 1 beyond rounding.
  Complex amplitude(double gt) const;

  /// (1/gamma) dA~/dt = sum_i r_i q_i exp(q_i gt).
  Complex amplitude_derivative(double gt) const;

  /// |A~|^2, the excited-state population for a fully excited start.
  double excited_population(double gt) const;

  const DimensionlessParams& params() const { return dp_; }
  const CubicRoots& roots() const { return roots_; }
  const std::array<Complex, 3>& residues() const { return residues_; }

 private:
  DimensionlessParams dp_;
  CubicRoots roots_;
  std::array<Complex, 3> residues_{};
};

/// Memory kernel over gamma^2 at scaled lag s >= 0:
///   F(s)/gamma^2 = (y1/4) cosh(theta s) exp(-lambda_bar s)
/// evaluated as (y1/8)[exp((theta-lambda_bar)s) + exp(-(theta+lambda_bar)s)]
/// so large thetas cannot overflow; Re(lambda_bar +- theta) > 0 keeps both
/// terms decaying.
Complex memory_kernel(const DimensionlessParams& dp, double s);

}  // namespace qmotion
