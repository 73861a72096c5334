#include "qmotion/nonmarkov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>

#include "qmotion/errors.hpp"
#include "qmotion/oracles.hpp"

namespace qmotion {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDecayedPopulation = 1e-6;
constexpr double kCrossingResolution = 1e-8;
constexpr double kThetaResolution = 1e-6;
constexpr double kLambdaResolution = 1e-9;
constexpr double kFallbackDt = 2e-3;

const char* kHorizonWarning =
    "population above 1e-6 at requested horizon; horizon doubled";
const char* kCoarseScanWarning =
    "growth boundaries closer than 4*dt_scan; revival structure may be under-resolved";
const char* kResidualWarning = "sampled horizon leaves population above 1e-6";

/// One growth interval of the population m = |A~|^2, before any pair angle
/// is applied. The trace-distance gain for every pair follows from (m0, m1).
struct GrowthItem {
  double t0 = 0.0;
  double t1 = 0.0;
  double m0 = 0.0;
  double m1 = 0.0;
};

struct GrowthScan {
  std::vector<GrowthItem> items;
  std::vector<std::string> warnings;
};

double pair_distance(double m, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return std::sqrt(c * c * m * m + s * s * m);
}

double gain_sum(const std::vector<GrowthItem>& items, double theta) {
  double total = 0.0;
  for (const GrowthItem& it : items) {
    total += pair_distance(it.m1, theta) - pair_distance(it.m0, theta);
  }
  return total;
}

std::vector<RevivalInterval> to_intervals(const std::vector<GrowthItem>& items,
                                          double theta) {
  std::vector<RevivalInterval> out;
  out.reserve(items.size());
  for (const GrowthItem& it : items) {
    out.push_back({it.t0, it.t1, pair_distance(it.m0, theta),
                   pair_distance(it.m1, theta)});
  }
  return out;
}

// d|A~|^2/dt over gamma, one pass over the three exponentials.
double population_slope(const AmplitudeSolution& sol, double gt) {
  Complex a{0.0, 0.0};
  Complex da{0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    const Complex e = sol.residues()[i] * std::exp(sol.roots().q[i] * gt);
    a += e;
    da += sol.roots().q[i] * e;
  }
  return 2.0 * (std::conj(a) * da).real();
}

double refine_crossing(const AmplitudeSolution& sol, double lo, double hi,
                       bool lo_growing) {
  for (int iter = 0; iter < 64 && hi - lo > kCrossingResolution; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if ((population_slope(sol, mid) > 0.0) == lo_growing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void check_scan_step(double dt_scan) {
  if (!(std::isfinite(dt_scan) && dt_scan > 0.0 && dt_scan <= 1e-2)) {
    throw ConfigError("dt_scan must lie in (0, 1e-2]");
  }
}

// Dense slope-sign scan with bisection refinement of every sign change.
// m'(0) = 0 exactly (the amplitude starts flat), so the walk starts in the
// non-growing state.
GrowthScan scan_growth(const AmplitudeSolution& sol, double gt_max,
                       double dt_scan) {
  check_scan_step(dt_scan);
  if (!(std::isfinite(gt_max) && gt_max > 0.0)) {
    throw InvalidParameterError("gt_max must be positive");
  }
  const std::int64_t n = std::max<std::int64_t>(
      2, static_cast<std::int64_t>(std::ceil(gt_max / dt_scan - 1e-12)));
  const double h = gt_max / static_cast<double>(n);

  GrowthScan scan;
  std::vector<double> boundaries;
  bool growing = false;
  GrowthItem cur;
  for (std::int64_t i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) * h;
    const bool g = population_slope(sol, t) > 0.0;
    if (g == growing) continue;
    const double tc = refine_crossing(sol, t - h, t, growing);
    boundaries.push_back(tc);
    if (g) {
      cur.t0 = tc;
      cur.m0 = sol.excited_population(tc);
    } else {
      cur.t1 = tc;
      cur.m1 = sol.excited_population(tc);
      scan.items.push_back(cur);
    }
    growing = g;
  }
  if (growing) {
    cur.t1 = gt_max;
    cur.m1 = sol.excited_population(gt_max);
    scan.items.push_back(cur);
  }

  for (std::size_t k = 1; k < boundaries.size(); ++k) {
    if (boundaries[k] - boundaries[k - 1] < 4.0 * dt_scan) {
      scan.warnings.push_back(kCoarseScanWarning);
      break;
    }
  }
  return scan;
}

// Quadratic through three samples; vertex clamped into the bracket.
std::pair<double, double> refine_extremum(const std::vector<double>& x,
                                          const std::vector<double>& y,
                                          std::size_t j) {
  if (j < 1 || j + 1 >= x.size()) return {x[j], y[j]};
  const double x1 = x[j - 1], x2 = x[j], x3 = x[j + 1];
  const double y1 = y[j - 1], y2 = y[j], y3 = y[j + 1];
  const double d1 = (y2 - y1) / (x2 - x1);
  const double d2 = (y3 - y2) / (x3 - x2);
  const double a = (d2 - d1) / (x3 - x1);
  if (a == 0.0) return {x2, y2};
  double xs = 0.5 * (x1 + x2) - d1 / (2.0 * a);
  if (!std::isfinite(xs)) return {x2, y2};
  xs = std::clamp(xs, x1, x3);
  const double ys = y1 + d1 * (xs - x1) + a * (xs - x1) * (xs - x2);
  return {xs, std::max(ys, 0.0)};
}

GrowthScan scan_growth_samples(const std::vector<double>& gt,
                               const std::vector<double>& population) {
  if (gt.size() != population.size() || gt.size() < 3) {
    throw InvalidParameterError("need at least 3 aligned (gt, population) samples");
  }
  for (std::size_t i = 1; i < gt.size(); ++i) {
    if (!(gt[i] > gt[i - 1])) {
      throw InvalidParameterError("sample times must increase strictly");
    }
  }

  GrowthScan scan;
  bool growing = false;
  GrowthItem cur;
  for (std::size_t i = 1; i < gt.size(); ++i) {
    const bool g = population[i] > population[i - 1];
    if (g == growing) continue;
    const auto [te, me] = refine_extremum(gt, population, i - 1);
    if (g) {
      cur.t0 = te;
      cur.m0 = me;
    } else {
      cur.t1 = te;
      cur.m1 = me;
      scan.items.push_back(cur);
    }
    growing = g;
  }
  if (growing) {
    cur.t1 = gt.back();
    cur.m1 = population.back();
    scan.items.push_back(cur);
  }
  if (population.back() >= kDecayedPopulation) {
    scan.warnings.push_back(kResidualWarning);
  }
  return scan;
}

void check_measurable(double population_at_end, double gt_max) {
  if (gt_max >= kDefaultHorizon) return;
  if (population_at_end < kDecayedPopulation) return;
  throw InvalidParameterError(
      "horizon too short: population not yet decayed and gt_max < 100");
}

double golden_max(const std::vector<GrowthItem>& items, double a, double b) {
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = gain_sum(items, c);
  double fd = gain_sum(items, d);
  while (b - a > kThetaResolution) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = gain_sum(items, d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = gain_sum(items, c);
    }
  }
  return 0.5 * (a + b);
}

double maximize_theta(const std::vector<GrowthItem>& items, int n_theta,
                      double* theta_out) {
  const double hi = 0.5 * kPi;
  int best = 0;
  double best_v = -1.0;
  for (int j = 0; j < n_theta; ++j) {
    const double th = hi * j / (n_theta - 1);
    const double v = gain_sum(items, th);
    if (v > best_v) {
      best_v = v;
      best = j;
    }
  }
  const double a = hi * std::max(0, best - 1) / (n_theta - 1);
  const double b = hi * std::min(n_theta - 1, best + 1) / (n_theta - 1);
  double theta = golden_max(items, a, b);
  double value = gain_sum(items, theta);
  if (value < best_v) {
    theta = hi * best / (n_theta - 1);
    value = best_v;
  }
  *theta_out = theta;
  return value;
}

void merge_warnings(std::vector<std::string>& dst,
                    const std::vector<std::string>& src) {
  for (const std::string& s : src) {
    if (std::find(dst.begin(), dst.end(), s) == dst.end()) dst.push_back(s);
  }
}

/// Both pair conventions at one parameter point, analytic when the residue
/// expansion holds and Volterra-sampled otherwise.
struct PointMeasure {
  double n_theta0 = 0.0;
  double n_maximized = 0.0;
  double theta_opt = 0.0;
  double horizon = 0.0;
  std::vector<std::string> warnings;
};

PointMeasure compute_point(const CavityQubitParams& p, double gt_max,
                           double dt_scan) {
  check_scan_step(dt_scan);
  const DimensionlessParams dp = to_dimensionless(p);
  PointMeasure out;

  std::optional<AmplitudeSolution> sol;
  try {
    sol.emplace(dp);
  } catch (const DegenerateRootsError&) {
    sol.reset();
  }

  GrowthScan scan;
  if (sol) {
    check_measurable(sol->excited_population(gt_max), gt_max);
    out.horizon = resolve_horizon(*sol, gt_max, out.warnings);
    scan = scan_growth(*sol, out.horizon, dt_scan);
  } else {
    VolterraConfig cfg;
    cfg.dt = kFallbackDt;
    cfg.t_max = gt_max;
    ComplexTrajectory traj = volterra_solve(dp, cfg);
    check_measurable(std::norm(traj.value.back()), gt_max);
    out.horizon = gt_max;
    if (std::norm(traj.value.back()) >= kDecayedPopulation) {
      out.horizon = 2.0 * gt_max;
      out.warnings.push_back(kHorizonWarning);
      cfg.t_max = out.horizon;
      traj = volterra_solve(dp, cfg);
    }
    std::vector<double> pop(traj.value.size());
    for (std::size_t i = 0; i < traj.value.size(); ++i) {
      pop[i] = std::norm(traj.value[i]);
    }
    scan = scan_growth_samples(traj.gt, pop);
  }
  merge_warnings(out.warnings, scan.warnings);

  out.n_theta0 = gain_sum(scan.items, 0.0);
  out.n_maximized = maximize_theta(scan.items, 65, &out.theta_opt);
  return out;
}

}  // namespace

void StatePair::validate() const {
  if (!std::isfinite(theta) || theta < 0.0 || theta > 0.5 * kPi) {
    throw InvalidParameterError("pair angle must lie in [0, pi/2]");
  }
}

QubitState StatePair::first() const {
  validate();
  return {0.5 * (1.0 + std::cos(theta)), Complex{0.5 * std::sin(theta), 0.0}};
}

QubitState StatePair::second() const {
  validate();
  return {0.5 * (1.0 - std::cos(theta)), Complex{-0.5 * std::sin(theta), 0.0}};
}

double trace_distance_at(const AmplitudeSolution& sol, const StatePair& pair,
                         double gt) {
  pair.validate();
  return pair_distance(sol.excited_population(gt), pair.theta);
}

RevivalScan detect_revivals(const AmplitudeSolution& sol, const StatePair& pair,
                            double gt_max, double dt_scan) {
  pair.validate();
  GrowthScan scan = scan_growth(sol, gt_max, dt_scan);
  RevivalScan out;
  out.intervals = to_intervals(scan.items, pair.theta);
  out.warnings = std::move(scan.warnings);
  return out;
}

double resolve_horizon(const AmplitudeSolution& sol, double requested,
                       std::vector<std::string>& warnings) {
  if (!(std::isfinite(requested) && requested > 0.0)) {
    throw InvalidParameterError("horizon must be positive");
  }
  if (sol.excited_population(requested) < kDecayedPopulation) return requested;
  warnings.push_back(kHorizonWarning);
  return 2.0 * requested;
}

NonMarkovResult blp_measure(const AmplitudeSolution& sol, const StatePair& pair,
                            double gt_max, double dt_scan) {
  pair.validate();
  check_measurable(sol.excited_population(gt_max), gt_max);

  NonMarkovResult res;
  res.horizon = resolve_horizon(sol, gt_max, res.warnings);
  GrowthScan scan = scan_growth(sol, res.horizon, dt_scan);
  merge_warnings(res.warnings, scan.warnings);
  res.theta_opt = pair.theta;
  res.intervals = to_intervals(scan.items, pair.theta);
  res.n_measure = gain_sum(scan.items, pair.theta);
  return res;
}

NonMarkovResult maximize_over_pairs(const AmplitudeSolution& sol, double gt_max,
                                    int n_theta, double dt_scan) {
  if (n_theta < 32) throw ConfigError("n_theta must be >= 32");
  check_measurable(sol.excited_population(gt_max), gt_max);

  NonMarkovResult res;
  res.horizon = resolve_horizon(sol, gt_max, res.warnings);
  GrowthScan scan = scan_growth(sol, res.horizon, dt_scan);
  merge_warnings(res.warnings, scan.warnings);
  res.n_measure = maximize_theta(scan.items, n_theta, &res.theta_opt);
  res.intervals = to_intervals(scan.items, res.theta_opt);
  return res;
}

NonMarkovResult blp_from_samples(const std::vector<double>& gt,
                                 const std::vector<double>& population,
                                 const StatePair& pair) {
  pair.validate();
  GrowthScan scan = scan_growth_samples(gt, population);

  NonMarkovResult res;
  res.horizon = gt.back();
  res.theta_opt = pair.theta;
  res.intervals = to_intervals(scan.items, pair.theta);
  res.n_measure = gain_sum(scan.items, pair.theta);
  res.warnings = std::move(scan.warnings);
  return res;
}

std::vector<BetaSweepRow> sweep_beta(const CavityQubitParams& base,
                                     const std::vector<double>& beta_grid,
                                     double gt_max, PairPolicy policy,
                                     double dt_scan) {
  std::vector<BetaSweepRow> rows;
  rows.reserve(beta_grid.size());
  for (double b : beta_grid) {
    BetaSweepRow row;
    row.beta = b;
    try {
      CavityQubitParams p = base;
      p.beta = b;
      const PointMeasure pt = compute_point(p, gt_max, dt_scan);
      row.n_measure = policy == PairPolicy::kTheta0 ? pt.n_theta0 : pt.n_maximized;
      row.n_maximized = pt.n_maximized;
      row.theta_opt = pt.theta_opt;
      row.horizon = pt.horizon;
      row.warnings = pt.warnings;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

LambdaSweepResult sweep_lambda(const CavityQubitParams& base,
                               const std::vector<double>& lambda_ratios,
                               const std::vector<double>& betas, double gt_max,
                               PairPolicy policy, double dt_scan, double n_cut) {
  if (!(std::isfinite(n_cut) && n_cut > 0.0)) {
    throw ConfigError("n_cut must be positive");
  }

  LambdaSweepResult out;
  for (double lr : lambda_ratios) {
    for (double b : betas) {
      LambdaSweepRow row;
      row.lambda_ratio = lr;
      row.beta = b;
      try {
        CavityQubitParams p = base;
        p.lambda_width = lr * base.gamma;
        p.beta = b;
        const PointMeasure pt = compute_point(p, gt_max, dt_scan);
        row.n_measure = policy == PairPolicy::kTheta0 ? pt.n_theta0 : pt.n_maximized;
        row.horizon = pt.horizon;
        merge_warnings(out.warnings, pt.warnings);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      out.rows.push_back(std::move(row));
    }
  }

  // Largest grid crossing from above n_cut, refined by bisection.
  for (std::size_t bi = 0; bi < betas.size(); ++bi) {
    LambdaThreshold th;
    th.beta = betas[bi];
    th.lambda_ratio = std::numeric_limits<double>::quiet_NaN();

    std::vector<std::pair<double, double>> pts;  // (lambda_ratio, measure)
    for (std::size_t li = 0; li < lambda_ratios.size(); ++li) {
      const LambdaSweepRow& row = out.rows[li * betas.size() + bi];
      if (row.error.empty()) pts.emplace_back(row.lambda_ratio, row.n_measure);
    }
    std::ptrdiff_t cross = -1;
    for (std::ptrdiff_t k = static_cast<std::ptrdiff_t>(pts.size()) - 2; k >= 0; --k) {
      if (pts[k].second > n_cut && pts[k + 1].second <= n_cut) {
        cross = k;
        break;
      }
    }
    if (cross >= 0) {
      double lo = pts[cross].first;
      double hi = pts[cross + 1].first;
      try {
        while (hi - lo > kLambdaResolution) {
          const double mid = 0.5 * (lo + hi);
          const double n_mid =
              measure_at_lambda(base, mid, betas[bi], gt_max, policy, dt_scan, nullptr);
          if (n_mid > n_cut) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        th.lambda_ratio = 0.5 * (lo + hi);
      } catch (const std::exception& e) {
        merge_warnings(out.warnings, {std::string("threshold refinement failed: ") + e.what()});
      }
    }
    out.thresholds.push_back(th);
  }
  return out;
}

double measure_at_lambda(const CavityQubitParams& base, double lambda_ratio,
                         double beta, double gt_max, PairPolicy policy,
                         double dt_scan, std::vector<std::string>* warnings) {
  CavityQubitParams p = base;
  p.lambda_width = lambda_ratio * base.gamma;
  p.beta = beta;
  const PointMeasure pt = compute_point(p, gt_max, dt_scan);
  if (warnings) merge_warnings(*warnings, pt.warnings);
  return policy == PairPolicy::kTheta0 ? pt.n_theta0 : pt.n_maximized;
}

}  // namespace qmotion
