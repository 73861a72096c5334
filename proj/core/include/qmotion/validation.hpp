#pragma once

#include <string>
#include <vector>

#include "qmotion/params.hpp"

namespace qmotion {

/// One oracle cross-check: an independent route to the same quantity,
/// compared at a documented tolerance.
struct OracleCheck {
  std::string name;
  std::string detail;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ValidationOptions {
  /// Acceptance-grade settings (denser Volterra step, 8000-mode ladder,
  /// full horizons) instead of the fast defaults.
  bool full = false;
  double volterra_dt = 1.0e-3;
};

/// Runs the oracle battery: stationary closed form vs residue expansion,
/// Volterra vs residue expansion, kernel quadrature vs closed-form kernel,
/// and the discrete-mode ladder vs the analytic amplitude.
std::vector<OracleCheck> run_validation(const ValidationOptions& opt = {});

/// JSON report with per-check records and an overall "pass" flag.
std::string validation_report_json(const std::vector<OracleCheck>& checks);

}  // namespace qmotion
