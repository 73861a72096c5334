#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmotion/params.hpp"

namespace qmotion {

/// Parameter assignments read from a config file; unset fields keep their
/// previous values when applied.
struct ParamOverrides {
  std::optional<double> gamma;
  std::optional<double> lambda_width;
  std::optional<double> delta;
  std::optional<double> omega0;
  std::optional<double> beta;

  void apply(CavityQubitParams& p) const;
};

/// Accepts either a JSON object or flat key=value lines ('#' comments
/// allowed); keys are gamma, lambda_width, delta, omega0, beta. Unknown
/// keys or unparsable values throw ConfigError.
ParamOverrides parse_param_overrides(std::string_view text);

/// Named parameter bundles mirroring the reference figure captions.
struct Preset {
  std::string name;
  std::string command;  ///< subcommand the preset belongs to
  CavityQubitParams params;
  std::vector<double> betas;
  std::vector<double> lambda_ratios;  ///< non-empty only for lambda sweeps
  double t_max = 50.0;
  double dt = 1.0e-2;
};

const std::vector<Preset>& presets();

/// nullptr when no preset carries that name.
const Preset* find_preset(std::string_view name);

}  // namespace qmotion
