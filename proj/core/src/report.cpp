#include "qmotion/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "qmotion/errors.hpp"
#include "qmotion/oracles.hpp"
#include "qmotion/version.hpp"

namespace qmotion {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string beta_label(double beta) { return "beta=" + short_num(beta); }

std::vector<double> time_grid(double t_max, double dt) {
  if (!(std::isfinite(t_max) && t_max > 0.0 && std::isfinite(dt) && dt > 0.0)) {
    throw ConfigError("time grid needs positive t_max and dt");
  }
  const auto n = static_cast<std::int64_t>(std::llround(t_max / dt));
  if (n < 1 || n > 1'000'000) {
    throw ConfigError("time grid must have between 1 and 1e6 steps");
  }
  std::vector<double> x(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i) * dt;
  return x;
}

void append_params(DataTable& t, const CavityQubitParams& p) {
  t.params.emplace_back("gamma", p.gamma);
  t.params.emplace_back("lambda_width", p.lambda_width);
  t.params.emplace_back("delta", p.delta);
  t.params.emplace_back("omega0", p.omega0);
}

/// Amplitude and scaled derivative on a fixed grid, from the residue
/// expansion when available and from the Volterra solver at degenerate
/// parameter points. The fallback step divides the output step exactly.
struct AmplitudeTrack {
  std::vector<Complex> value;
  std::vector<Complex> derivative;
  bool fallback = false;
};

AmplitudeTrack evaluate_amplitude(const CavityQubitParams& p,
                                  const std::vector<double>& grid, double dt) {
  const DimensionlessParams dp = to_dimensionless(p);
  AmplitudeTrack track;
  track.value.resize(grid.size());
  track.derivative.resize(grid.size());
  try {
    const AmplitudeSolution sol(dp);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      track.value[i] = sol.amplitude(grid[i]);
      track.derivative[i] = sol.amplitude_derivative(grid[i]);
    }
    return track;
  } catch (const DegenerateRootsError&) {
    track.fallback = true;
  }

  const auto sub = static_cast<std::int64_t>(std::ceil(dt / 1e-3 - 1e-12));
  VolterraConfig cfg;
  cfg.dt = dt / static_cast<double>(std::max<std::int64_t>(1, sub));
  cfg.t_max = grid.back();
  const ComplexTrajectory traj = volterra_solve(dp, cfg);
  const std::size_t stride = static_cast<std::size_t>(std::max<std::int64_t>(1, sub));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::size_t j = i * stride;
    if (j >= traj.value.size()) throw NumericalError("fallback grid misaligned");
    track.value[i] = traj.value[j];
    track.derivative[i] = traj.derivative[j];
  }
  return track;
}

void require_betas(const std::vector<double>& betas) {
  if (betas.empty()) throw ConfigError("beta list must not be empty");
}

DataTable make_rate_table(const CavityQubitParams& base,
                          const std::vector<double>& betas, double t_max,
                          double dt, bool want_decay) {
  require_betas(betas);
  DataTable t;
  t.title = want_decay ? "decay rate over gamma" : "frequency shift over gamma";
  t.x_label = "gt";
  append_params(t, base);
  t.x = time_grid(t_max, dt);
  bool any_fallback = false;
  for (double b : betas) {
    CavityQubitParams p = base;
    p.beta = b;
    const DimensionlessParams dp = to_dimensionless(p);
    const AmplitudeTrack track = evaluate_amplitude(p, t.x, dt);
    any_fallback = any_fallback || track.fallback;
    Series s;
    s.label = beta_label(b);
    s.values.resize(t.x.size());
    for (std::size_t i = 0; i < t.x.size(); ++i) {
      const Complex a = track.value[i];
      if (std::abs(a) <= 1e-12) {
        s.values[i] = kNaN;
        continue;
      }
      const Complex ratio = track.derivative[i] / a;
      s.values[i] = want_decay ? -2.0 * ratio.real()
                               : 2.0 * dp.y2 - 2.0 * ratio.imag();
    }
    t.series.push_back(std::move(s));
  }
  t.notes.push_back("nan marks samples where the amplitude vanishes");
  if (any_fallback) {
    t.notes.push_back("degenerate-root series computed by direct kernel integration");
  }
  return t;
}

}  // namespace

DataTable make_coherence_table(const CavityQubitParams& base,
                               const std::vector<double>& betas, double t_max,
                               double dt) {
  require_betas(betas);
  DataTable t;
  t.title = "coherence";
  t.x_label = "gt";
  append_params(t, base);
  t.x = time_grid(t_max, dt);
  bool any_fallback = false;
  for (double b : betas) {
    CavityQubitParams p = base;
    p.beta = b;
    const AmplitudeTrack track = evaluate_amplitude(p, t.x, dt);
    any_fallback = any_fallback || track.fallback;
    Series s;
    s.label = beta_label(b);
    s.values.resize(t.x.size());
    for (std::size_t i = 0; i < t.x.size(); ++i) {
      s.values[i] = std::abs(track.value[i]);
    }
    t.series.push_back(std::move(s));
  }
  t.notes.push_back("balanced initial superposition: C(t) = |A(t)|");
  if (any_fallback) {
    t.notes.push_back("degenerate-root series computed by direct kernel integration");
  }
  return t;
}

DataTable make_decay_rate_table(const CavityQubitParams& base,
                                const std::vector<double>& betas, double t_max,
                                double dt) {
  return make_rate_table(base, betas, t_max, dt, true);
}

DataTable make_lamb_shift_table(const CavityQubitParams& base,
                                const std::vector<double>& betas, double t_max,
                                double dt) {
  return make_rate_table(base, betas, t_max, dt, false);
}

DataTable make_amplitude_table(const CavityQubitParams& base,
                               const std::vector<double>& betas, double t_max,
                               double dt) {
  require_betas(betas);
  DataTable t;
  t.title = "rotating-frame amplitude";
  t.x_label = "gt";
  append_params(t, base);
  t.x = time_grid(t_max, dt);
  bool any_fallback = false;
  for (double b : betas) {
    CavityQubitParams p = base;
    p.beta = b;
    const AmplitudeTrack track = evaluate_amplitude(p, t.x, dt);
    any_fallback = any_fallback || track.fallback;
    Series re{beta_label(b) + ":re", {}};
    Series im{beta_label(b) + ":im", {}};
    Series mag{beta_label(b) + ":abs", {}};
    re.values.resize(t.x.size());
    im.values.resize(t.x.size());
    mag.values.resize(t.x.size());
    for (std::size_t i = 0; i < t.x.size(); ++i) {
      re.values[i] = track.value[i].real();
      im.values[i] = track.value[i].imag();
      mag.values[i] = std::abs(track.value[i]);
    }
    t.series.push_back(std::move(re));
    t.series.push_back(std::move(im));
    t.series.push_back(std::move(mag));
  }
  if (any_fallback) {
    t.notes.push_back("degenerate-root series computed by direct kernel integration");
  }
  return t;
}

DataTable make_beta_sweep_table(const CavityQubitParams& base,
                                const std::vector<BetaSweepRow>& rows) {
  DataTable t;
  t.title = "information backflow measure vs velocity";
  t.x_label = "beta";
  append_params(t, base);
  Series n{"N", {}};
  for (const BetaSweepRow& r : rows) {
    t.x.push_back(r.beta);
    n.values.push_back(r.error.empty() ? r.n_measure : kNaN);
    if (!r.error.empty()) {
      t.notes.push_back(beta_label(r.beta) + " failed: " + r.error);
    }
    for (const std::string& w : r.warnings) {
      const std::string note = beta_label(r.beta) + ": " + w;
      if (std::find(t.notes.begin(), t.notes.end(), note) == t.notes.end()) {
        t.notes.push_back(note);
      }
    }
  }
  t.series.push_back(std::move(n));
  return t;
}

std::string beta_sweep_to_json(const CavityQubitParams& base,
                               const std::vector<BetaSweepRow>& rows) {
  nlohmann::ordered_json j;
  j["tool"] = {{"name", "qmotion"}, {"version", kVersion}};
  j["title"] = "information backflow measure vs velocity";
  j["params"] = {{"gamma", base.gamma},
                 {"lambda_width", base.lambda_width},
                 {"delta", base.delta},
                 {"omega0", base.omega0}};
  nlohmann::ordered_json grid = nlohmann::ordered_json::array();
  nlohmann::ordered_json n_policy = nlohmann::ordered_json::array();
  nlohmann::ordered_json n_max = nlohmann::ordered_json::array();
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const BetaSweepRow& r : rows) {
    grid.push_back(r.beta);
    n_policy.push_back(r.error.empty() ? nlohmann::ordered_json(r.n_measure)
                                       : nlohmann::ordered_json(nullptr));
    n_max.push_back(r.error.empty() ? nlohmann::ordered_json(r.n_maximized)
                                    : nlohmann::ordered_json(nullptr));
    nlohmann::ordered_json pt;
    pt["beta"] = r.beta;
    pt["n_measure"] = r.error.empty() ? nlohmann::ordered_json(r.n_measure)
                                      : nlohmann::ordered_json(nullptr);
    pt["n_maximized"] = r.error.empty() ? nlohmann::ordered_json(r.n_maximized)
                                        : nlohmann::ordered_json(nullptr);
    pt["theta_opt"] = r.theta_opt;
    pt["horizon"] = r.horizon;
    pt["warnings"] = r.warnings;
    if (!r.error.empty()) pt["error"] = r.error;
    points.push_back(std::move(pt));
  }
  j["grid"] = {{"label", "beta"}, {"values", std::move(grid)}};
  j["series"] = nlohmann::ordered_json::array(
      {{{"label", "N"}, {"values", std::move(n_policy)}},
       {{"label", "N_maximized"}, {"values", std::move(n_max)}}});
  j["points"] = std::move(points);
  return j.dump(2) + "\n";
}

std::string lambda_sweep_to_csv(const CavityQubitParams& base,
                                const LambdaSweepResult& sweep) {
  std::string out;
  out += "# qmotion ";
  out += kVersion;
  out += "\n";
  out += "# title: information backflow measure vs band width\n";
  out += "# param: gamma = " + sci(base.gamma) + "\n";
  out += "# param: delta = " + sci(base.delta) + "\n";
  out += "# param: omega0 = " + sci(base.omega0) + "\n";
  for (const LambdaThreshold& th : sweep.thresholds) {
    out += "# note: threshold beta=" + short_num(th.beta) +
           " lambda_ratio=" + sci(th.lambda_ratio) + "\n";
  }
  for (const std::string& w : sweep.warnings) {
    out += "# note: " + w + "\n";
  }
  for (const LambdaSweepRow& r : sweep.rows) {
    if (!r.error.empty()) {
      out += "# note: lambda_ratio=" + short_num(r.lambda_ratio) + " " +
             beta_label(r.beta) + " failed: " + r.error + "\n";
    }
  }
  out += "lambda_ratio,beta,N\n";
  for (const LambdaSweepRow& r : sweep.rows) {
    out += sci(r.lambda_ratio) + "," + sci(r.beta) + "," +
           (r.error.empty() ? sci(r.n_measure) : "nan") + "\n";
  }
  return out;
}

std::string lambda_sweep_to_json(const CavityQubitParams& base,
                                 const LambdaSweepResult& sweep) {
  DataTable t = make_lambda_sweep_table(base, sweep);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(to_json(t));
  nlohmann::ordered_json thresholds = nlohmann::ordered_json::array();
  for (const LambdaThreshold& th : sweep.thresholds) {
    thresholds.push_back({{"beta", th.beta}, {"lambda_ratio", th.lambda_ratio}});
  }
  j["thresholds"] = std::move(thresholds);
  return j.dump(2) + "\n";
}

DataTable make_lambda_sweep_table(const CavityQubitParams& base,
                                  const LambdaSweepResult& sweep) {
  DataTable t;
  t.title = "information backflow measure vs band width";
  t.x_label = "lambda_ratio";
  t.params.emplace_back("gamma", base.gamma);
  t.params.emplace_back("delta", base.delta);
  t.params.emplace_back("omega0", base.omega0);

  std::vector<double> betas;
  for (const LambdaSweepRow& r : sweep.rows) {
    if (std::find(betas.begin(), betas.end(), r.beta) == betas.end()) {
      betas.push_back(r.beta);
    }
  }
  for (const LambdaSweepRow& r : sweep.rows) {
    if (std::find(t.x.begin(), t.x.end(), r.lambda_ratio) == t.x.end()) {
      t.x.push_back(r.lambda_ratio);
    }
  }
  for (double b : betas) t.series.push_back({beta_label(b), std::vector<double>(t.x.size(), kNaN)});
  for (const LambdaSweepRow& r : sweep.rows) {
    const auto li = std::find(t.x.begin(), t.x.end(), r.lambda_ratio) - t.x.begin();
    const auto bi = std::find(betas.begin(), betas.end(), r.beta) - betas.begin();
    t.series[static_cast<std::size_t>(bi)].values[static_cast<std::size_t>(li)] =
        r.error.empty() ? r.n_measure : kNaN;
  }
  for (const LambdaThreshold& th : sweep.thresholds) {
    t.notes.push_back("threshold " + beta_label(th.beta) +
                      " lambda_ratio=" + sci(th.lambda_ratio));
  }
  for (const std::string& w : sweep.warnings) t.notes.push_back(w);
  return t;
}

}  // namespace qmotion
