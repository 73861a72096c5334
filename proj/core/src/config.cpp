#include "qmotion/config.hpp"

#include <cstdlib>

#include <json.hpp>

#include "qmotion/errors.hpp"

namespace qmotion {

void ParamOverrides::apply(CavityQubitParams& p) const {
  if (gamma) p.gamma = *gamma;
  if (lambda_width) p.lambda_width = *lambda_width;
  if (delta) p.delta = *delta;
  if (omega0) p.omega0 = *omega0;
  if (beta) p.beta = *beta;
}

namespace {

void assign(ParamOverrides& o, std::string_view key, double value) {
  if (key == "gamma") {
    o.gamma = value;
  } else if (key == "lambda_width") {
    o.lambda_width = value;
  } else if (key == "delta") {
    o.delta = value;
  } else if (key == "omega0") {
    o.omega0 = value;
  } else if (key == "beta") {
    o.beta = value;
  } else {
    throw ConfigError("unknown parameter key '" + std::string(key) + "'");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_value(std::string_view field) {
  const std::string tmp(trim(field));
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
    throw ConfigError("unparsable numeric value '" + tmp + "'");
  }
  return v;
}

ParamOverrides parse_json_overrides(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config JSON parse failure: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config JSON must be an object");
  ParamOverrides o;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) {
      throw ConfigError("config key '" + key + "' must be a number");
    }
    assign(o, key, value.get<double>());
  }
  return o;
}

}  // namespace

ParamOverrides parse_param_overrides(std::string_view text) {
  std::string_view probe = text;
  while (!probe.empty() &&
         (probe.front() == ' ' || probe.front() == '\t' || probe.front() == '\n' ||
          probe.front() == '\r')) {
    probe.remove_prefix(1);
  }
  if (!probe.empty() && probe.front() == '{') return parse_json_overrides(text);

  // Flat key=value lines, last assignment wins.
  ParamOverrides o;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = eol == std::string_view::npos
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected key=value line, got '" + std::string(line) + "'");
    }
    assign(o, trim(line.substr(0, eq)), parse_value(line.substr(eq + 1)));
  }
  return o;
}

namespace {

// Reference parameter point: Rb Rydberg microwave qubit, gamma = 33.3 rad/s
// and omega0/gamma = 1.53e9 (51 GHz transition over a 33.3 rad/s linewidth).
// Only the ratios enter the dynamics; the Doppler detuning beta*omega0/gamma
// must reach order sqrt(lambda/gamma) for motion to matter, which fixes the
// frequency scale relative to gamma, not an absolute unit.
CavityQubitParams reference_params(double lambda_over_gamma) {
  CavityQubitParams p;
  p.gamma = 33.3;
  p.lambda_width = lambda_over_gamma * p.gamma;
  p.delta = 0.0;
  p.omega0 = 1.53e9 * p.gamma;
  p.beta = 0.0;
  return p;
}

std::vector<double> lambda_scan_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 30; ++i) g.push_back(0.05 * i);
  return g;
}

std::vector<Preset> build_presets() {
  std::vector<Preset> v;

  // Backflow measure vs velocity, narrow band.
  v.push_back({"fig2a", "nonmarkov", reference_params(0.01),
               {0.0, 1e-10, 2e-10, 3e-10, 4e-10, 5e-10, 6e-10, 7e-10, 8e-10, 9e-10, 1e-9},
               {}, 100.0, 1e-3});
  // Same sweep at ten times the band width.
  v.push_back({"fig2b", "nonmarkov", reference_params(0.1),
               {0.0, 1e-10, 2e-10, 3e-10, 4e-10, 5e-10, 6e-10, 7e-10, 8e-10, 9e-10, 1e-9},
               {}, 100.0, 1e-3});
  // Backflow measure vs band width for three velocities.
  v.push_back({"fig3", "nonmarkov", reference_params(1.0),
               {0.0, 0.05e-9, 0.1e-9}, lambda_scan_grid(), 100.0, 1e-3});
  // Coherence decay, narrow band, slow qubits.
  v.push_back({"fig4a", "coherence", reference_params(0.01),
               {0.0, 0.05e-9, 0.1e-9}, {}, 50.0, 1e-2});
  // Coherence decay, narrow band, faster qubits.
  v.push_back({"fig4b", "coherence", reference_params(0.01),
               {0.3e-9, 0.5e-9, 1.0e-9}, {}, 50.0, 1e-2});
  // Decay rate oscillations, narrow band.
  v.push_back({"fig5", "decay-rate", reference_params(0.01),
               {0.0, 0.05e-9, 0.1e-9, 1.0e-9}, {}, 50.0, 1e-2});
  // Coherence in the broad-band regime, slow qubits.
  v.push_back({"fig6a", "coherence", reference_params(3.0),
               {0.0, 0.5e-9, 1.0e-9}, {}, 50.0, 1e-2});
  // Coherence in the broad-band regime, fast qubits.
  v.push_back({"fig6b", "coherence", reference_params(3.0),
               {10e-9, 50e-9, 100e-9}, {}, 50.0, 1e-2});
  // Decay rate in the broad-band regime (render with --log-abs).
  v.push_back({"fig7", "decay-rate", reference_params(3.0),
               {0.0, 0.5e-9, 1.0e-9, 10e-9, 50e-9, 100e-9}, {}, 50.0, 1e-2});
  return v;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = build_presets();
  return table;
}

const Preset* find_preset(std::string_view name) {
  for (const Preset& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace qmotion
