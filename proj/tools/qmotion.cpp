#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmotion/config.hpp"
#include "qmotion/errors.hpp"
#include "qmotion/nonmarkov.hpp"
#include "qmotion/report.hpp"
#include "qmotion/svg.hpp"
#include "qmotion/trajectory.hpp"
#include "qmotion/validation.hpp"
#include "qmotion/version.hpp"

namespace {

using namespace qmotion;

struct CommandOpts {
  std::string config_path;
  std::string preset_name;
  std::string out_path;
  std::string format = "csv";
  std::string pair = "theta0";
  std::vector<double> betas;
  std::vector<double> lambda_ratios;
  double t_max = 0.0;
  double dt = 0.0;
  double gamma = 0.0;
  double lambda_width = 0.0;
  double delta = 0.0;
  double omega0 = 0.0;
};

void add_common_options(CLI::App* sub, CommandOpts& o, bool sweep) {
  sub->add_option("--config", o.config_path, "parameter file (JSON object or key=value lines)");
  sub->add_option("--preset", o.preset_name, "named reference-figure parameter bundle");
  sub->add_option("--out", o.out_path, "output path (stdout when omitted)");
  sub->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--beta", o.betas, "velocity ratio list");
  if (sweep) {
    sub->add_option("--lambda-ratio", o.lambda_ratios,
                    "band width over gamma list (turns the sweep over lambda)");
    sub->add_option("--pair", o.pair, "state-pair policy for the measure")
        ->check(CLI::IsMember({"theta0", "maximized"}));
    sub->add_option("--t-max", o.t_max, "scaled horizon (default 100)");
    sub->add_option("--dt", o.dt, "scaled scan step (default 1e-3)");
  } else {
    sub->add_option("--t-max", o.t_max, "scaled end time (default 50)");
    sub->add_option("--dt", o.dt, "scaled output step (default 1e-2)");
  }
  sub->add_option("--gamma", o.gamma, "qubit decay rate, rad/s");
  sub->add_option("--lambda-width", o.lambda_width, "band width, rad/s");
  sub->add_option("--delta", o.delta, "band detuning, rad/s");
  sub->add_option("--omega0", o.omega0, "transition frequency, rad/s");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing '" + path + "'");
}

struct Resolved {
  CavityQubitParams params;
  std::vector<double> betas{0.0};
  std::vector<double> lambda_ratios;
  double t_max = 50.0;
  double dt = 1e-2;
};

// Precedence: built-in defaults, then preset, then config file, then flags.
Resolved resolve(const CLI::App* sub, const CommandOpts& o, bool sweep) {
  Resolved r;
  if (sweep) {
    r.t_max = kDefaultHorizon;
    r.dt = 1e-3;
  }
  if (!o.preset_name.empty()) {
    const Preset* p = find_preset(o.preset_name);
    if (p == nullptr) throw ConfigError("unknown preset '" + o.preset_name + "'");
    r.params = p->params;
    r.betas = p->betas;
    r.lambda_ratios = p->lambda_ratios;
    r.t_max = p->t_max;
    r.dt = p->dt;
  }
  if (!o.config_path.empty()) {
    const ParamOverrides ov = parse_param_overrides(read_file(o.config_path));
    ov.apply(r.params);
    if (ov.beta) r.betas = {*ov.beta};
  }
  if (sub->count("--gamma") > 0) r.params.gamma = o.gamma;
  if (sub->count("--lambda-width") > 0) r.params.lambda_width = o.lambda_width;
  if (sub->count("--delta") > 0) r.params.delta = o.delta;
  if (sub->count("--omega0") > 0) r.params.omega0 = o.omega0;
  if (sub->count("--beta") > 0) r.betas = o.betas;
  if (sweep && sub->count("--lambda-ratio") > 0) r.lambda_ratios = o.lambda_ratios;
  if (sub->count("--t-max") > 0) r.t_max = o.t_max;
  if (sub->count("--dt") > 0) r.dt = o.dt;
  r.params.validate();
  return r;
}

int run_table_command(const CLI::App* sub, const CommandOpts& o,
                      const std::string& which) {
  const Resolved r = resolve(sub, o, false);
  DataTable table;
  if (which == "coherence") {
    table = make_coherence_table(r.params, r.betas, r.t_max, r.dt);
  } else if (which == "decay-rate") {
    table = make_decay_rate_table(r.params, r.betas, r.t_max, r.dt);
  } else if (which == "lamb-shift") {
    table = make_lamb_shift_table(r.params, r.betas, r.t_max, r.dt);
  } else {
    table = make_amplitude_table(r.params, r.betas, r.t_max, r.dt);
  }
  write_output(o.out_path, o.format == "json" ? to_json(table) : to_csv(table));
  return 0;
}

int run_nonmarkov(const CLI::App* sub, const CommandOpts& o) {
  const Resolved r = resolve(sub, o, true);
  const PairPolicy policy =
      o.pair == "maximized" ? PairPolicy::kMaximized : PairPolicy::kTheta0;
  if (!r.lambda_ratios.empty()) {
    const LambdaSweepResult sweep = sweep_lambda(r.params, r.lambda_ratios,
                                                 r.betas, r.t_max, policy, r.dt);
    write_output(o.out_path, o.format == "json"
                                 ? lambda_sweep_to_json(r.params, sweep)
                                 : lambda_sweep_to_csv(r.params, sweep));
    return 0;
  }
  const std::vector<BetaSweepRow> rows =
      sweep_beta(r.params, r.betas, r.t_max, policy, r.dt);
  write_output(o.out_path,
               o.format == "json" ? beta_sweep_to_json(r.params, rows)
                                  : to_csv(make_beta_sweep_table(r.params, rows)));
  return 0;
}

int run_validate(const CLI::App* sub, const CommandOpts& o, bool full) {
  ValidationOptions vo;
  vo.full = full;
  vo.volterra_dt = full ? 5e-4 : 1e-3;
  if (sub->count("--dt") > 0) vo.volterra_dt = o.dt;
  const std::vector<OracleCheck> checks = run_validation(vo);
  write_output(o.out_path, validation_report_json(checks));
  for (const OracleCheck& c : checks) {
    if (!c.pass) return 2;
  }
  return 0;
}

int run_plot(const CommandOpts& o, const std::string& input, bool log_abs,
             int width, int height) {
  const DataTable table = parse_csv(read_file(input));
  PlotOptions po;
  po.log_abs = log_abs;
  po.width = width;
  po.height = height;
  write_output(o.out_path, render_svg(table, po));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qubit-in-a-moving-frame cavity dynamics toolkit"};
  app.set_version_flag("--version", std::string("qmotion ") + kVersion);
  app.require_subcommand(1);

  CommandOpts opts[7];
  int rc = 0;
  std::function<int()> action;

  const char* table_cmds[] = {"coherence", "decay-rate", "lamb-shift", "amplitude"};
  const char* table_help[] = {
      "coherence of the balanced superposition vs scaled time",
      "instantaneous decay rate over gamma vs scaled time",
      "instantaneous frequency shift over gamma vs scaled time",
      "rotating-frame amplitude components vs scaled time"};
  for (int i = 0; i < 4; ++i) {
    CLI::App* sub = app.add_subcommand(table_cmds[i], table_help[i]);
    add_common_options(sub, opts[i], false);
    const std::string name = table_cmds[i];
    CommandOpts* o = &opts[i];
    sub->callback([sub, o, name, &action]() {
      action = [sub, o, name]() { return run_table_command(sub, *o, name); };
    });
  }

  CLI::App* nm = app.add_subcommand(
      "nonmarkov", "information backflow measure over velocity or band width");
  add_common_options(nm, opts[4], true);
  nm->callback([nm, &opts, &action]() {
    action = [nm, &opts]() { return run_nonmarkov(nm, opts[4]); };
  });

  CLI::App* val = app.add_subcommand(
      "validate", "cross-check the analytic engine against the direct solvers");
  static bool full = false;
  val->add_flag("--full", full, "acceptance-grade oracle settings");
  val->add_option("--out", opts[5].out_path, "report path (stdout when omitted)");
  val->add_option("--dt", opts[5].dt, "direct-solver step override");
  val->callback([val, &opts, &action]() {
    action = [val, &opts]() { return run_validate(val, opts[5], full); };
  });

  CLI::App* plot = app.add_subcommand("plot", "render a trajectory CSV as SVG");
  static std::string plot_input;
  static bool log_abs = false;
  static int width = 860;
  static int height = 540;
  plot->add_option("input", plot_input, "CSV file produced by a table command")
      ->required();
  plot->add_option("--out", opts[6].out_path, "SVG path (stdout when omitted)");
  plot->add_flag("--log-abs", log_abs,
                 "plot log10 of the magnitude; negative stretches dashed");
  plot->add_option("--width", width, "canvas width in px");
  plot->add_option("--height", height, "canvas height in px");
  plot->callback([&opts, &action]() {
    action = [&opts]() {
      return run_plot(opts[6], plot_input, log_abs, width, height);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    rc = action ? action() : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidParameterError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
