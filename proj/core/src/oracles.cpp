#include "qmotion/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>

#include "qmotion/amplitude.hpp"
#include "qmotion/errors.hpp"

namespace qmotion {

namespace {

constexpr double kPi = std::numbers::pi;

void require_cfg(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

void VolterraConfig::validate() const {
  require_cfg(std::isfinite(t_max) && t_max > 0.0, "volterra t_max must be positive");
  require_cfg(std::isfinite(dt) && dt > 0.0 && dt <= 1e-2,
              "volterra dt must lie in (0, 1e-2]");
  require_cfg(t_max / dt <= 1e7, "volterra grid exceeds 1e7 steps");
}

ComplexTrajectory volterra_solve(const DimensionlessParams& dp,
                                 const VolterraConfig& cfg) {
  cfg.validate();
  const double h = cfg.dt;
  const std::int64_t n_steps = std::max<std::int64_t>(1, std::llround(cfg.t_max / h));
  const std::size_t n = static_cast<std::size_t>(n_steps);

  // Kernel depends on the lag only; tabulate once.
  std::vector<double> kr(n + 1), ki(n + 1);
  for (std::size_t m = 0; m <= n; ++m) {
    const Complex k = memory_kernel(dp, static_cast<double>(m) * h);
    kr[m] = k.real();
    ki[m] = k.imag();
  }

  std::vector<double> ar(n + 1), ai(n + 1);
  ar[0] = 1.0;
  ai[0] = 0.0;

  ComplexTrajectory out;
  out.gt.resize(n + 1);
  out.value.resize(n + 1);
  out.derivative.resize(n + 1);
  out.gt[0] = 0.0;
  out.value[0] = Complex{1.0, 0.0};
  out.derivative[0] = Complex{0.0, 0.0};

  // Trapezoid both for the outer ODE step and for the convolution:
  //   A_n (1 + h^2 K_0 / 4) = A_{n-1} - (h/2) I_{n-1} - (h^2/2) S_n
  // with S_n the convolution sum excluding the diagonal term and I_n the
  // full product-trapezoid integral at step n.
  const Complex k0{kr[0], ki[0]};
  const Complex denom = 1.0 + 0.25 * h * h * k0;
  Complex integral_prev{0.0, 0.0};

  for (std::size_t step = 1; step <= n; ++step) {
    double sr = 0.5 * (kr[step] * ar[0] - ki[step] * ai[0]);
    double si = 0.5 * (kr[step] * ai[0] + ki[step] * ar[0]);
    for (std::size_t m = 1; m < step; ++m) {
      const double a = kr[m];
      const double b = ki[m];
      const double c = ar[step - m];
      const double d = ai[step - m];
      sr += a * c - b * d;
      si += a * d + b * c;
    }
    const Complex s{sr, si};
    const Complex a_prev{ar[step - 1], ai[step - 1]};
    const Complex a_new = (a_prev - 0.5 * h * integral_prev - 0.5 * h * h * s) / denom;
    ar[step] = a_new.real();
    ai[step] = a_new.imag();

    const Complex integral = h * (s + 0.5 * k0 * a_new);
    integral_prev = integral;

    out.gt[step] = static_cast<double>(step) * h;
    out.value[step] = a_new;
    out.derivative[step] = -integral;
  }
  return out;
}

void ModeGrid::validate(const DimensionlessParams& dp) const {
  require_cfg(n_modes >= 100, "mode grid needs at least 100 modes");
  require_cfg(window_halfwidth >= 20.0, "mode window halfwidth must be >= 20 band widths");
  require_cfg(std::isfinite(tau) && tau >= 1e3, "scaled mirror time tau must be >= 1e3");
  require_cfg(std::isfinite(dt) && dt > 0.0, "mode dt must be positive");
  require_cfg(std::isfinite(t_max) && t_max > 0.0, "mode t_max must be positive");

  const double spacing = 2.0 * window_halfwidth * dp.y1 / (n_modes - 1);
  require_cfg(spacing * t_max < 0.5 * kPi,
              "mode grid too coarse: discrete recurrence inside the horizon");
  require_cfg(dp.y2 - dp.y3 - window_halfwidth * dp.y1 > 0.0,
              "mode window extends to non-positive frequencies");
}

ModeSystem build_mode_system(const CavityQubitParams& p, const ModeGrid& grid) {
  const DimensionlessParams dp = to_dimensionless(p);
  grid.validate(dp);

  const int n = grid.n_modes;
  const double center = dp.y2 - dp.y3;
  const double half = grid.window_halfwidth * dp.y1;
  const double spacing = 2.0 * half / (n - 1);

  ModeSystem sys;
  sys.y2 = dp.y2;
  sys.beta = dp.beta;
  sys.omega.resize(n);
  sys.detuning.resize(n);
  sys.coupling.resize(n);
  sys.phase.resize(n);
  const double two_pi = 2.0 * kPi;
  for (int k = 0; k < n; ++k) {
    const double w = center - half + spacing * k;
    sys.omega[k] = w;
    sys.detuning[k] = dp.y2 - w;
    const double j = spectral_density(p, w * p.gamma);
    sys.coupling[k] = std::sqrt(j * spacing * p.gamma) / p.gamma;
    // Raw argument omega*tau reaches ~1e11 rad; reduce once so the
    // integrator only ever feeds sin() arguments of a few thousand rad.
    sys.phase[k] = std::fmod(w * grid.tau, two_pi);
  }
  return sys;
}

namespace {

// d(ce)/dt = sum_k G_k(t) e^{+i d_k t} c_k * (-i)
// d(c_k)/dt = G_k(t) e^{-i d_k t} ce * (-i)
// with G_k(t) = coupling_k * sin(omega_k beta t - phase_k). Split into real
// arithmetic; trig arrays are computed once per stage time.
struct StageTrig {
  std::vector<double> shape;  // G_k(t)
  std::vector<double> cd;     // cos(d_k t)
  std::vector<double> sd;     // sin(d_k t)

  void fill(const ModeSystem& sys, double t) {
    const std::size_t n = sys.omega.size();
    shape.resize(n);
    cd.resize(n);
    sd.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      shape[k] = sys.coupling[k] * std::sin(sys.omega[k] * sys.beta * t - sys.phase[k]);
      const double arg = sys.detuning[k] * t;
      cd[k] = std::cos(arg);
      sd[k] = std::sin(arg);
    }
  }
};

struct ModeState {
  double ce_r = 1.0;
  double ce_i = 0.0;
  std::vector<double> xr;
  std::vector<double> xi;
};

struct ModeDeriv {
  double ce_r = 0.0;
  double ce_i = 0.0;
  std::vector<double> xr;
  std::vector<double> xi;
};

void eval_deriv(const ModeState& y, const StageTrig& trig, ModeDeriv& dy) {
  const std::size_t n = y.xr.size();
  double der = 0.0;
  double dei = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double g = trig.shape[k];
    const double c = trig.cd[k];
    const double s = trig.sd[k];
    der += g * (c * y.xi[k] + s * y.xr[k]);
    dei -= g * (c * y.xr[k] - s * y.xi[k]);
    dy.xr[k] = g * (c * y.ce_i - s * y.ce_r);
    dy.xi[k] = -g * (c * y.ce_r + s * y.ce_i);
  }
  dy.ce_r = der;
  dy.ce_i = dei;
}

void axpy_state(const ModeState& y, double a, const ModeDeriv& d, ModeState& out) {
  const std::size_t n = y.xr.size();
  out.ce_r = y.ce_r + a * d.ce_r;
  out.ce_i = y.ce_i + a * d.ce_i;
  for (std::size_t k = 0; k < n; ++k) {
    out.xr[k] = y.xr[k] + a * d.xr[k];
    out.xi[k] = y.xi[k] + a * d.xi[k];
  }
}

double state_norm(const ModeState& y) {
  double norm = y.ce_r * y.ce_r + y.ce_i * y.ce_i;
  const std::size_t n = y.xr.size();
  for (std::size_t k = 0; k < n; ++k) {
    norm += y.xr[k] * y.xr[k] + y.xi[k] * y.xi[k];
  }
  return norm;
}

}  // namespace

DiscreteModeResult integrate_mode_system(const ModeSystem& sys, double t_max,
                                         double dt) {
  require_cfg(std::isfinite(t_max) && t_max > 0.0, "mode t_max must be positive");
  require_cfg(std::isfinite(dt) && dt > 0.0, "mode dt must be positive");
  const std::int64_t n_steps = std::max<std::int64_t>(1, std::llround(t_max / dt));
  require_cfg(n_steps <= 10'000'000, "mode grid exceeds 1e7 steps");

  const std::size_t n = sys.omega.size();
  ModeState y;
  y.xr.assign(n, 0.0);
  y.xi.assign(n, 0.0);

  ModeDeriv k1, k2, k3, k4;
  for (ModeDeriv* d : {&k1, &k2, &k3, &k4}) {
    d->xr.assign(n, 0.0);
    d->xi.assign(n, 0.0);
  }
  ModeState tmp;
  tmp.xr.assign(n, 0.0);
  tmp.xi.assign(n, 0.0);

  StageTrig trig_lo;   // stage time t_n; reused from the previous step's end
  StageTrig trig_mid;  // t_n + dt/2, shared by k2 and k3
  StageTrig trig_hi;   // t_n + dt
  trig_lo.fill(sys, 0.0);

  DiscreteModeResult res;
  res.trajectory.gt.resize(static_cast<std::size_t>(n_steps) + 1);
  res.trajectory.value.resize(static_cast<std::size_t>(n_steps) + 1);
  res.trajectory.derivative.resize(static_cast<std::size_t>(n_steps) + 1);

  // The integration runs in the frame rotating at the transition frequency;
  // the optical phase is restored per sample so the trajectory carries the
  // full amplitude A(t) = ce(t) exp(-i y2 gt).
  const auto record = [&res, &sys](std::size_t idx, double t, const ModeState& st,
                                   const ModeDeriv& d) {
    const double ph = std::fmod(sys.y2 * t, 2.0 * kPi);
    const Complex rot{std::cos(ph), -std::sin(ph)};
    const Complex ce{st.ce_r, st.ce_i};
    const Complex dce{d.ce_r, d.ce_i};
    res.trajectory.gt[idx] = t;
    res.trajectory.value[idx] = ce * rot;
    res.trajectory.derivative[idx] = (dce - Complex{0.0, sys.y2} * ce) * rot;
  };

  for (std::int64_t step = 0; step < n_steps; ++step) {
    const double t = static_cast<double>(step) * dt;
    eval_deriv(y, trig_lo, k1);
    record(static_cast<std::size_t>(step), t, y, k1);

    trig_mid.fill(sys, t + 0.5 * dt);
    trig_hi.fill(sys, t + dt);

    axpy_state(y, 0.5 * dt, k1, tmp);
    eval_deriv(tmp, trig_mid, k2);
    axpy_state(y, 0.5 * dt, k2, tmp);
    eval_deriv(tmp, trig_mid, k3);
    axpy_state(y, dt, k3, tmp);
    eval_deriv(tmp, trig_hi, k4);

    const double w = dt / 6.0;
    y.ce_r += w * (k1.ce_r + 2.0 * k2.ce_r + 2.0 * k3.ce_r + k4.ce_r);
    y.ce_i += w * (k1.ce_i + 2.0 * k2.ce_i + 2.0 * k3.ce_i + k4.ce_i);
    for (std::size_t k = 0; k < n; ++k) {
      y.xr[k] += w * (k1.xr[k] + 2.0 * k2.xr[k] + 2.0 * k3.xr[k] + k4.xr[k]);
      y.xi[k] += w * (k1.xi[k] + 2.0 * k2.xi[k] + 2.0 * k3.xi[k] + k4.xi[k]);
    }
    std::swap(trig_lo, trig_hi);

    res.max_norm_drift = std::max(res.max_norm_drift, std::abs(1.0 - state_norm(y)));
  }

  const double t_end = static_cast<double>(n_steps) * dt;
  eval_deriv(y, trig_lo, k1);
  record(static_cast<std::size_t>(n_steps), t_end, y, k1);
  return res;
}

DiscreteModeResult discrete_mode_solve(const CavityQubitParams& p,
                                       const ModeGrid& grid) {
  const ModeSystem sys = build_mode_system(p, grid);
  return integrate_mode_system(sys, grid.t_max, grid.dt);
}

namespace {

// 16-point Gauss-Legendre nodes and weights on [-1, 1], positive half.
constexpr int kGlPairs = 8;
constexpr double kGlX[kGlPairs] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGlW[kGlPairs] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

Complex integrand(const CavityQubitParams& p, double omega, double u) {
  const double jw = spectral_density(p, omega);
  const double slow = std::cos(omega * p.beta * u);
  const double ph = (p.omega0 - omega) * u;
  return 0.5 * jw * slow * Complex{std::cos(ph), std::sin(ph)};
}

Complex gl16_panel(const CavityQubitParams& p, double a, double b, double u) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Complex acc{0.0, 0.0};
  for (int i = 0; i < kGlPairs; ++i) {
    const double dx = half * kGlX[i];
    acc += kGlW[i] * (integrand(p, mid - dx, u) + integrand(p, mid + dx, u));
  }
  return half * acc;
}

}  // namespace

Complex kernel_quadrature(const CavityQubitParams& p, double t, double t_prime,
                          const QuadratureOptions& opt) {
  p.validate();
  if (!(t >= t_prime && t_prime >= 0.0)) {
    throw InvalidParameterError("kernel_quadrature requires t >= t_prime >= 0");
  }
  require_cfg(opt.window_widths >= 1e3, "quadrature window must span >= 1e3 widths");
  require_cfg(opt.rel_tol > 0.0 && opt.max_rounds >= 1, "bad quadrature options");

  const double lam = p.lambda_width;
  const double lo = p.omega0 - opt.window_widths * lam;
  const double hi = p.omega0 + opt.window_widths * lam;
  if (lo <= 0.0) {
    throw QuadratureError("quadrature window extends below zero frequency");
  }
  const double u = t - t_prime;

  // Geometric rings away from the Lorentzian peak, clipped to the window.
  const double peak = std::clamp(p.omega0 - p.delta, lo, hi);
  std::vector<double> edges;
  edges.push_back(peak);
  for (double r = lam; peak - r > lo; r *= 2.0) edges.insert(edges.begin(), peak - r);
  edges.insert(edges.begin(), lo);
  for (double r = lam; peak + r < hi; r *= 2.0) edges.push_back(peak + r);
  edges.push_back(hi);

  // No base subpanel wider than a quarter oscillation of the phase factor.
  const double max_width =
      (u > 0.0) ? 0.5 * kPi / (u * (1.0 + p.beta)) : std::numeric_limits<double>::infinity();

  std::vector<std::int64_t> counts(edges.size() - 1);
  std::int64_t total = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double width = edges[i + 1] - edges[i];
    std::int64_t c = 1;
    if (std::isfinite(max_width) && width > max_width) {
      c = static_cast<std::int64_t>(std::ceil(width / max_width));
    }
    counts[i] = c;
    total += c;
  }

  const double scale_floor = 0.25 * p.gamma * lam;
  Complex prev{0.0, 0.0};
  std::int64_t factor = 1;
  for (int round = 0; round <= opt.max_rounds; ++round, factor *= 2) {
    if (total * factor > 30'000'000) {
      throw QuadratureError("kernel quadrature grid too large before convergence");
    }
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      const std::int64_t c = counts[i] * factor;
      const double a = edges[i];
      const double step = (edges[i + 1] - a) / static_cast<double>(c);
      for (std::int64_t j = 0; j < c; ++j) {
        acc += gl16_panel(p, a + j * step, a + (j + 1) * step, u);
      }
    }
    if (round > 0 &&
        std::abs(acc - prev) <= opt.rel_tol * std::max(std::abs(acc), scale_floor)) {
      return acc;
    }
    prev = acc;
  }
  throw QuadratureError("kernel quadrature failed to converge");
}

Complex stationary_amplitude(const DimensionlessParams& dp, double gt) {
  const Complex lb = dp.lambda_bar_over_gamma;
  const Complex d = std::sqrt(lb * lb - dp.y1);
  const Complex x = 0.5 * d * gt;
  if (std::abs(x) < 1e-6) {
    // cosh(x) + (lb*gt/2) sinh(x)/x expanded to O(x^2); exact at the
    // critically damped point d = 0.
    const Complex x2 = x * x;
    return std::exp(-0.5 * lb * gt) *
           (1.0 + 0.5 * x2 + 0.5 * lb * gt * (1.0 + x2 / 6.0));
  }
  // Swapping the branch of d swaps the two terms; the sum is invariant.
  const Complex w_plus = 0.5 * (1.0 + lb / d) * std::exp(0.5 * (d - lb) * gt);
  const Complex w_minus = 0.5 * (1.0 - lb / d) * std::exp(-0.5 * (d + lb) * gt);
  return w_plus + w_minus;
}

double spectral_density(const CavityQubitParams& p, double omega) {
  if (!(omega > 0.0)) {
    throw InvalidParameterError("spectral density defined for omega > 0");
  }
  const double d = p.omega0 - omega - p.delta;
  return p.gamma * p.lambda_width * p.lambda_width /
         (2.0 * kPi * (d * d + p.lambda_width * p.lambda_width));
}

}  // namespace qmotion
