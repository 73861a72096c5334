#include "qmotion/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmotion/errors.hpp"

namespace qmotion {

namespace {

// Largest magnitude among the three coefficients; scale reference for the
// degeneracy and residual thresholds.
double root_scale(const CubicRoots& roots) {
  double s = 1.0;
  for (const Complex& q : roots.q) s = std::max(s, std::abs(q));
  return s;
}

Complex eval_cubic(Complex q, Complex c2, Complex c1, Complex c0) {
  return ((q + c2) * q + c1) * q + c0;
}

Complex eval_cubic_deriv(Complex q, Complex c2, Complex c1) {
  return (3.0 * q + 2.0 * c2) * q + c1;
}

}  // namespace

CubicCoefficients cubic_coefficients(const DimensionlessParams& dp) {
  const Complex lam = dp.lambda_bar_over_gamma;  // y1 - i*y3
  CubicCoefficients c;
  c.c2 = 2.0 * lam;
  c.c1 = dp.u_plus * dp.u_minus + 0.25 * dp.y1;
  c.c0 = 0.25 * dp.y1 * lam;
  return c;
}

CubicRoots solve_cubic(Complex c2, Complex c1, Complex c0) {
  // Depressed form t^3 + p t + r via q = t - c2/3.
  const Complex third_c2 = c2 / 3.0;
  const Complex p = c1 - c2 * third_c2;
  const Complex r = c0 + third_c2 * (2.0 * third_c2 * third_c2 - c1);

  CubicRoots roots;
  const Complex disc = std::sqrt(0.25 * r * r + p * p * p / 27.0);
  // Pick the w = -r/2 +- disc branch with larger magnitude; avoids
  // cancellation when the two nearly coincide.
  Complex w = -0.5 * r + disc;
  const Complex w_alt = -0.5 * r - disc;
  if (std::abs(w_alt) > std::abs(w)) w = w_alt;

  if (std::abs(w) == 0.0) {
    // p == r == 0: triple root of the depressed cubic.
    roots.q = {-third_c2, -third_c2, -third_c2};
  } else {
    const Complex u = std::pow(w, 1.0 / 3.0);
    const Complex v = -p / (3.0 * u);
    const Complex omega{-0.5, std::sqrt(3.0) / 2.0};
    const Complex omega_bar = std::conj(omega);
    Complex uk = u;
    Complex vk = v;
    for (int k = 0; k < 3; ++k) {
      roots.q[k] = uk + vk - third_c2;
      uk *= omega;
      vk *= omega_bar;
    }
  }

  // One round of Newton polishing per root; the closed form already puts us
  // within a few ulps except near degeneracy, where the step guard keeps the
  // update bounded.
  const double scale = root_scale(roots);
  for (Complex& q : roots.q) {
    for (int iter = 0; iter < 3; ++iter) {
      const Complex f = eval_cubic(q, c2, c1, c0);
      const Complex df = eval_cubic_deriv(q, c2, c1);
      if (std::abs(df) <= 1e-300) break;
      const Complex step = f / df;
      if (std::abs(step) > 0.5 * scale) break;
      q -= step;
      if (std::abs(step) < 1e-15 * scale) break;
    }
  }

  std::sort(roots.q.begin(), roots.q.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  const double sep_tol = 1e-8 * scale;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(roots.q[i] - roots.q[j]) < sep_tol) {
        std::ostringstream os;
        os << "cubic roots " << i << " and " << j << " separated by "
           << std::abs(roots.q[i] - roots.q[j]) << " (tol " << sep_tol << ")";
        throw DegenerateRootsError(os.str());
      }
    }
  }

  const double res_tol = 1e-10 * scale * scale * scale;
  for (const Complex& q : roots.q) {
    const double res = std::abs(eval_cubic(q, c2, c1, c0));
    if (res > res_tol) {
      std::ostringstream os;
      os << "cubic residual " << res << " exceeds " << res_tol;
      throw NumericalError(os.str());
    }
  }
  return roots;
}

AmplitudeSolution::AmplitudeSolution(const DimensionlessParams& dp) : dp_(dp) {
  const CubicCoefficients c = cubic_coefficients(dp);
  roots_ = solve_cubic(c.c2, c.c1, c.c0);
  // Residue of (s + u+)(s + u-) / (cubic) at each simple root.
  for (int i = 0; i < 3; ++i) {
    const Complex qi = roots_.q[i];
    Complex denom{1.0, 0.0};
    for (int j = 0; j < 3; ++j) {
      if (j != i) denom *= qi - roots_.q[j];
    }
    residues_[i] = (qi + dp.u_plus) * (qi + dp.u_minus) / denom;
  }
}

Complex AmplitudeSolution::amplitude(double gt) const {
  Complex a{0.0, 0.0};
  for (int i = 0; i < 3; ++i) a += residues_[i] * std::exp(roots_.q[i] * gt);
  return a;
}

Complex AmplitudeSolution::amplitude_derivative(double gt) const {
  Complex a{0.0, 0.0};
  for (int i = 0; i < 3; ++i)
    a += residues_[i] * roots_.q[i] * std::exp(roots_.q[i] * gt);
  return a;
}

double AmplitudeSolution::excited_population(double gt) const {
  const double m = std::abs(amplitude(gt));
  return m * m;
}

Complex memory_kernel(const DimensionlessParams& dp, double s) {
  // (y1/4) cosh(theta s) exp(-lambda_bar s) written as a sum of two decaying
  // exponentials; both Re(lambda_bar -+ theta) > 0 for beta < 1e-3, so neither
  // term can overflow for s >= 0.
  const Complex a = (dp.theta_over_gamma - dp.lambda_bar_over_gamma) * s;
  const Complex b = -(dp.theta_over_gamma + dp.lambda_bar_over_gamma) * s;
  return 0.125 * dp.y1 * (std::exp(a) + std::exp(b));
}

}  // namespace qmotion
