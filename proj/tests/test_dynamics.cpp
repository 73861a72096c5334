#include <doctest.h>

#include <cmath>
#include <random>

#include "qmotion/dynamics.hpp"
#include "qmotion/errors.hpp"
#include "support/random_params.hpp"

using namespace qmotion;

namespace {

DimensionlessParams point(double lambda_ratio, double beta, double delta_ratio = 0.0) {
  CavityQubitParams p;
  p.gamma = 1.0;
  p.lambda_width = lambda_ratio;
  p.delta = delta_ratio;
  p.omega0 = 4.595e7;
  p.beta = beta;
  return to_dimensionless(p);
}

const QubitState kBalanced{0.5, Complex{0.5, 0.0}};

// Root of the oscillatory stationary amplitude, bisected on the sign of the
// real part; the amplitude is real for beta = 0, delta = 0.
double amplitude_zero(const AmplitudeSolution& sol, double lo, double hi) {
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (sol.amplitude(mid).real() > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("evolution fixes t = 0 and the ground state") {
  const AmplitudeSolution sol(point(0.1, 1.0e-9));
  std::mt19937 rng(5);
  for (int i = 0; i < 20; ++i) {
    const QubitState s = testing::random_state(rng);
    const QubitState at0 = evolve_state(s, sol, 0.0);
    CHECK(std::abs(at0.rho_aa - s.rho_aa) < 1e-12);
    CHECK(std::abs(at0.rho_ab - s.rho_ab) < 1e-12);
  }
  const QubitState ground{0.0, Complex{0.0, 0.0}};
  for (double gt : {1.0, 10.0, 40.0}) {
    const QubitState g = evolve_state(ground, sol, gt);
    CHECK(g.rho_aa == 0.0);
    CHECK(std::abs(g.rho_ab) == 0.0);
  }
}

TEST_CASE("balanced superposition tracks the amplitude") {
  const AmplitudeSolution sol(point(0.01, 5.0e-10));
  for (double gt : {0.5, 3.0, 12.0, 30.0}) {
    const double mag = std::abs(sol.amplitude(gt));
    const QubitState s = evolve_state(kBalanced, sol, gt);
    CHECK(std::abs(s.rho_aa - 0.5 * mag * mag) < 1e-12);
    CHECK(std::abs(std::abs(s.rho_ab) - 0.5 * mag) < 1e-12);
    CHECK(std::abs(coherence(s) - mag) < 1e-12);
  }
  CHECK(coherence(kBalanced) == 1.0);
  CHECK(coherence(QubitState{0.7, Complex{0.0, 0.0}}) == 0.0);
}

TEST_CASE("state guards") {
  CHECK_NOTHROW(kBalanced.validate());
  CHECK_THROWS_AS((QubitState{1.5, Complex{0.0, 0.0}}.validate()),
                  InvalidParameterError);
  CHECK_THROWS_AS((QubitState{-0.1, Complex{0.0, 0.0}}.validate()),
                  InvalidParameterError);
  CHECK_THROWS_AS((QubitState{0.5, Complex{0.6, 0.0}}.validate()),
                  InvalidParameterError);
}

TEST_CASE("decay rate starts at zero and reaches the slow-root asymptote") {
  const AmplitudeSolution sol(point(3.0, 0.0));
  CHECK(std::abs(decay_rate(sol, 0.0)) < 1e-6);
  // Slowest root of q^2 + 3q + 3/4: asymptotic rate 3 - sqrt(6).
  const double asym = 3.0 - std::sqrt(6.0);
  CHECK(std::abs(decay_rate(sol, 40.0) - asym) < 1e-9);

  double avg = 0.0;
  int n = 0;
  for (double gt = 10.0; gt <= 50.0; gt += 0.1, ++n) avg += decay_rate(sol, gt);
  avg /= n;
  CHECK(avg > 0.0);
  CHECK(avg < 1.0);
}

TEST_CASE("late-time decay rate falls as the band widens") {
  double prev = 2.0;
  for (double lr : {2.0, 3.0, 5.0}) {
    const double rate = decay_rate(AmplitudeSolution(point(lr, 0.0)), 40.0);
    CHECK(rate < prev);
    prev = rate;
  }
}

TEST_CASE("frequency shift starts at twice the transition frequency") {
  for (double lr : {0.01, 3.0}) {
    const DimensionlessParams dp = point(lr, 1.0e-9, 0.4);
    const AmplitudeSolution sol(dp);
    CHECK(std::abs(lamb_shift(sol, 0.0) - 2.0 * dp.y2) < 1e-9 * dp.y2);
  }
}

TEST_CASE("resonant stationary dynamics has no shift beyond the carrier") {
  const DimensionlessParams dp = point(0.1, 0.0);
  const AmplitudeSolution sol(dp);
  // One ulp of 2*y2 dominates any true imaginary residue here.
  for (double gt = 0.0; gt <= 30.0; gt += 0.25) {
    CHECK(std::abs(lamb_shift(sol, gt) - 2.0 * dp.y2) < 3e-8);
  }
}

TEST_CASE("shift matches a finite-difference log-derivative") {
  const DimensionlessParams dp = point(0.1, 1.0e-9, 0.3);
  const AmplitudeSolution sol(dp);
  for (double gt : {0.7, 4.0, 11.0}) {
    const double h = 1e-6;
    const Complex num =
        (sol.amplitude(gt + h) - sol.amplitude(gt - h)) / (2.0 * h);
    const double fd = 2.0 * dp.y2 - 2.0 * std::imag(num / sol.amplitude(gt));
    CHECK(std::abs(lamb_shift(sol, gt) - fd) < 1e-4);
  }
}

TEST_CASE("rates are tagged singular at amplitude zeros") {
  const AmplitudeSolution sol(point(0.01, 0.0));
  const double gt0 = amplitude_zero(sol, 30.0, 35.0);
  CHECK_THROWS_AS(decay_rate(sol, gt0), AmplitudeZeroError);
  CHECK_THROWS_AS(lamb_shift(sol, gt0), AmplitudeZeroError);
  const RateSample s = rate_sample(sol, gt0);
  CHECK(s.singular);
  CHECK(std::isnan(s.decay));
  CHECK(std::isnan(s.shift));
  const RateSample ok = rate_sample(sol, 1.0);
  CHECK_FALSE(ok.singular);
  CHECK(std::isfinite(ok.decay));
}

TEST_CASE("negative decay rate appears exactly when the amplitude revives") {
  // Narrow band: revivals and negative rate stretches. Wide band: neither.
  for (double beta : {0.0, 0.05e-9, 0.1e-9}) {
    const AmplitudeSolution sol(point(0.01, beta));
    bool negative = false;
    bool nonmonotone = false;
    double prev = 1.0;
    for (double gt = 0.01; gt <= 50.0; gt += 0.01) {
      const RateSample s = rate_sample(sol, gt);
      if (!s.singular && s.decay < 0.0) negative = true;
      const double mag = std::abs(sol.amplitude(gt));
      if (mag > prev + 1e-12) nonmonotone = true;
      prev = mag;
    }
    CHECK(negative == nonmonotone);
    CHECK(negative);
  }
  const AmplitudeSolution wide(point(3.0, 0.0));
  for (double gt = 0.01; gt <= 50.0; gt += 0.01) {
    CHECK(rate_sample(wide, gt).decay >= 0.0);
  }
}

TEST_CASE("master equation closes on its own trajectory") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> time(0.0, 40.0);
  int tested = 0;
  while (tested < 300) {
    const CavityQubitParams p = testing::random_valid_params(rng);
    try {
      const AmplitudeSolution sol(to_dimensionless(p));
      const QubitState rho0 = testing::random_state(rng);
      const double gt = time(rng);
      if (std::abs(sol.amplitude(gt)) < 1e-6) continue;  // pole neighborhood
      CHECK(master_equation_residual(sol, rho0, gt) < 1e-8);
      ++tested;
    } catch (const DegenerateRootsError&) {
    }
  }
  const AmplitudeSolution sol(point(0.1, 1.0e-9, 0.2));
  CHECK(master_equation_residual(sol, kBalanced, 0.0) < 1e-10);
  CHECK(master_equation_residual(sol, QubitState{0.8, Complex{0.0, 0.0}}, 3.0) <
        1e-8);
}

TEST_CASE("evolution preserves positivity, trace, and linearity") {
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> time(0.0, 60.0);
  std::uniform_real_distribution<double> mix(0.0, 1.0);
  int tested = 0;
  while (tested < 1000) {
    const CavityQubitParams p = testing::random_valid_params(rng);
    try {
      const AmplitudeSolution sol(to_dimensionless(p));
      const QubitState s1 = testing::random_state(rng);
      const QubitState s2 = testing::random_state(rng);
      const double gt = time(rng);
      const QubitState e1 = evolve_state(s1, sol, gt);
      CHECK_NOTHROW(e1.validate());

      const double a = mix(rng);
      QubitState blend{a * s1.rho_aa + (1.0 - a) * s2.rho_aa,
                       a * s1.rho_ab + (1.0 - a) * s2.rho_ab};
      const QubitState eb = evolve_state(blend, sol, gt);
      const QubitState e2 = evolve_state(s2, sol, gt);
      CHECK(std::abs(eb.rho_aa - (a * e1.rho_aa + (1.0 - a) * e2.rho_aa)) < 1e-12);
      CHECK(std::abs(eb.rho_ab - (a * e1.rho_ab + (1.0 - a) * e2.rho_ab)) < 1e-12);
      ++tested;
    } catch (const DegenerateRootsError&) {
    }
  }
}

TEST_CASE("trace distance against the explicit matrix formula") {
  std::mt19937 rng(31);
  for (int i = 0; i < 200; ++i) {
    const QubitState a = testing::random_state(rng);
    const QubitState b = testing::random_state(rng);
    // Difference matrix is traceless Hermitian: eigenvalues +-sqrt(dz^2+|w|^2).
    const double dz = a.rho_aa - b.rho_aa;
    const Complex w = a.rho_ab - b.rho_ab;
    const double expected = std::sqrt(dz * dz + std::norm(w));
    CHECK(std::abs(trace_distance(a, b) - expected) < 1e-14);
  }
  const QubitState s = testing::random_state(rng);
  CHECK(trace_distance(s, s) == 0.0);
  CHECK(std::abs(trace_distance(QubitState{1.0, {0.0, 0.0}},
                                QubitState{0.0, {0.0, 0.0}}) -
                 1.0) < 1e-15);
}
