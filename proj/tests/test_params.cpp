#include <doctest.h>

#include <cmath>
#include <random>

#include "qmotion/errors.hpp"
#include "qmotion/params.hpp"
#include "support/random_params.hpp"

using namespace qmotion;

namespace {
double rel_diff(Complex a, Complex b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? std::abs(a - b) : std::abs(a - b) / scale;
}
}  // namespace

TEST_CASE("narrow-band stationary point reduces exactly") {
  CavityQubitParams p{1.0, 0.01, 0.0, 4.59e7, 0.0};
  const DimensionlessParams dp = to_dimensionless(p);
  CHECK(dp.y1 == 0.01);
  CHECK(dp.y3 == 0.0);
  CHECK(dp.theta_over_gamma == Complex{0.0, 0.0});
  CHECK(dp.u_plus == Complex{0.01, 0.0});
  CHECK(dp.u_minus == Complex{0.01, 0.0});
}

TEST_CASE("unit inputs reduce to unit ratios") {
  CavityQubitParams p{1.0, 1.0, 0.0, 1.0, 0.0};
  const DimensionlessParams dp = to_dimensionless(p);
  CHECK(dp.y1 == 1.0);
  CHECK(dp.y2 == 1.0);
  CHECK(dp.y3 == 0.0);
  CHECK(dp.u_plus == Complex{1.0, 0.0});
  CHECK(dp.u_minus == Complex{1.0, 0.0});
}

TEST_CASE("moving wide-band point splits the kernel exponents") {
  CavityQubitParams p{1.0, 3.0, 0.0, 4.59e7, 1.0e-8};
  const DimensionlessParams dp = to_dimensionless(p);
  // u+- = 3(1 +- 1e-8) +- i*0.459 from the Doppler split of lambda_bar.
  CHECK(rel_diff(dp.u_plus, Complex{3.0 * (1.0 + 1.0e-8), 0.459}) < 1e-12);
  CHECK(rel_diff(dp.u_minus, Complex{3.0 * (1.0 - 1.0e-8), -0.459}) < 1e-12);
}

TEST_CASE("u_plus and u_minus are lambda_bar +- theta") {
  std::mt19937 rng(91);
  for (int i = 0; i < 500; ++i) {
    const CavityQubitParams p = testing::random_valid_params(rng);
    const DimensionlessParams dp = to_dimensionless(p);
    CHECK(rel_diff(dp.u_plus, dp.lambda_bar_over_gamma + dp.theta_over_gamma) <
          1e-12);
    CHECK(rel_diff(dp.u_minus, dp.lambda_bar_over_gamma - dp.theta_over_gamma) <
          1e-12);
    // Product identity used by the characteristic cubic.
    const Complex lhs = dp.u_plus * dp.u_minus;
    const Complex rhs = dp.lambda_bar_over_gamma * dp.lambda_bar_over_gamma -
                        dp.theta_over_gamma * dp.theta_over_gamma;
    CHECK(rel_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("beta = 0 collapses the split") {
  std::mt19937 rng(92);
  for (int i = 0; i < 100; ++i) {
    CavityQubitParams p = testing::random_valid_params(rng);
    p.beta = 0.0;
    const DimensionlessParams dp = to_dimensionless(p);
    CHECK(dp.theta_over_gamma == Complex{0.0, 0.0});
    CHECK(dp.u_plus == dp.u_minus);
  }
}

TEST_CASE("reduction is scale invariant") {
  CavityQubitParams p{33.3, 0.333, 1.7, 1.53e9, 5.0e-10};
  const DimensionlessParams a = to_dimensionless(p);

  CavityQubitParams q = p;  // power-of-two scale: ratios are bit-exact
  q.gamma *= 4.0;
  q.lambda_width *= 4.0;
  q.delta *= 4.0;
  q.omega0 *= 4.0;
  const DimensionlessParams b = to_dimensionless(q);
  CHECK(a.y1 == b.y1);
  CHECK(a.y2 == b.y2);
  CHECK(a.y3 == b.y3);
  CHECK(a.u_plus == b.u_plus);

  CavityQubitParams r = p;  // generic scale: ratios to rounding
  r.gamma *= 3.7;
  r.lambda_width *= 3.7;
  r.delta *= 3.7;
  r.omega0 *= 3.7;
  const DimensionlessParams c = to_dimensionless(r);
  CHECK(std::abs(a.y1 - c.y1) / a.y1 < 1e-14);
  CHECK(std::abs(a.y2 - c.y2) / a.y2 < 1e-14);
  CHECK(rel_diff(a.u_plus, c.u_plus) < 1e-14);
}

TEST_CASE("parameter guards reject unphysical inputs") {
  const CavityQubitParams good{1.0, 0.1, 0.0, 1.0e6, 1.0e-9};
  CHECK_NOTHROW(good.validate());

  CavityQubitParams p = good;
  p.gamma = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameterError);
  p = good;
  p.gamma = -1.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameterError);
  p = good;
  p.lambda_width = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameterError);
  p = good;
  p.omega0 = -2.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameterError);
  p = good;
  p.beta = -1.0e-12;
  CHECK_THROWS_AS(p.validate(), InvalidParameterError);
  p = good;
  p.beta = 1.0e-3;  // non-relativistic guard is exclusive
  CHECK_THROWS_AS(p.validate(), InvalidParameterError);
  p = good;
  p.delta = std::nan("");
  CHECK_THROWS_AS(p.validate(), InvalidParameterError);
  p = good;
  p.delta = -0.5;  // detuning may take either sign
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("to_dimensionless rejects invalid inputs") {
  CavityQubitParams p{1.0, 0.1, 0.0, 1.0e6, 2.0e-3};
  CHECK_THROWS_AS(to_dimensionless(p), InvalidParameterError);
}
