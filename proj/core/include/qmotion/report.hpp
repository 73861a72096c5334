#pragma once

#include "qmotion/nonmarkov.hpp"
#include "qmotion/trajectory.hpp"

namespace qmotion {

/// Shared layout for the trajectory commands: scaled time on the abscissa,
/// one series (or series group) per requested beta. Degenerate-root
/// parameter points are served transparently by the Volterra solver.
DataTable make_coherence_table(const CavityQubitParams& base,
                               const std::vector<double>& betas, double t_max,
                               double dt);

/// Gamma(t)/gamma per beta; samples at log-derivative poles are NaN.
DataTable make_decay_rate_table(const CavityQubitParams& base,
                                const std::vector<double>& betas, double t_max,
                                double dt);

/// Omega(t)/gamma per beta, same singularity tagging.
DataTable make_lamb_shift_table(const CavityQubitParams& base,
                                const std::vector<double>& betas, double t_max,
                                double dt);

/// Re, Im, and magnitude of the rotating-frame amplitude per beta.
DataTable make_amplitude_table(const CavityQubitParams& base,
                               const std::vector<double>& betas, double t_max,
                               double dt);

/// beta on the abscissa, one "N" series; full rows kept for JSON output.
DataTable make_beta_sweep_table(const CavityQubitParams& base,
                                const std::vector<BetaSweepRow>& rows);

/// Rich JSON for a beta sweep: policy measure, maximized measure, optimal
/// theta, horizon, and warnings per point.
std::string beta_sweep_to_json(const CavityQubitParams& base,
                               const std::vector<BetaSweepRow>& rows);

/// Cross-product CSV with columns lambda_ratio,beta,N; thresholds recorded
/// as header comments.
std::string lambda_sweep_to_csv(const CavityQubitParams& base,
                                const LambdaSweepResult& sweep);

std::string lambda_sweep_to_json(const CavityQubitParams& base,
                                 const LambdaSweepResult& sweep);

/// lambda_ratio on the abscissa, one series per beta (for plotting).
DataTable make_lambda_sweep_table(const CavityQubitParams& base,
                                  const LambdaSweepResult& sweep);

}  // namespace qmotion
