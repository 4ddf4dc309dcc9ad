// colearnsim: batch simulator for human-AI co-learning mission dynamics.
//
// Subcommands: run (trajectory + chart + summary), sweep (one run per
// parameter value), calibrate (grid search toward a target positive
// fraction), check (loop-polarity and parameter self-diagnostics).
// Exit codes: 0 success, 1 runtime or diagnostic failure, 2 usage or
// validation error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "colearn/analysis.hpp"
#include "colearn/param_path.hpp"
#include "colearn/scenario.hpp"
#include "colearn/scenario_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string scenario_name = "baseline";
  std::string out_dir = ".";
  std::vector<std::string> overrides;
  std::optional<double> dt;
  std::optional<std::string> method;
  bool json = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The check subcommand skips the validation gate: diagnosing a broken
// configuration is its whole point, and the params line reports it.
colearn::Scenario load_scenario(const CommonOptions& opts,
                                bool require_valid = true) {
  colearn::Scenario scenario;
  if (opts.scenario_name == "baseline") {
    scenario = colearn::builtin_baseline();
  } else {
    std::ifstream file(opts.scenario_name);
    if (!file) {
      throw UsageError("cannot open scenario file: " + opts.scenario_name);
    }
    std::stringstream buffer;
    buffer << file.rdbuf();
    scenario = colearn::parse_scenario(buffer.str());
  }

  for (const std::string& assignment : opts.overrides) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--set expects PATH=VALUE, got '" + assignment + "'");
    }
    colearn::set_parameter_text(scenario, assignment.substr(0, eq),
                                assignment.substr(eq + 1));
  }
  if (opts.dt) {
    scenario.solver.dt = *opts.dt;
  }
  if (opts.method) {
    colearn::set_parameter_text(scenario, "solver.method", *opts.method);
  }

  if (require_valid) {
    const colearn::ValidationResult check =
        colearn::validate_scenario(scenario);
    if (!check.ok()) {
      std::string message = "scenario validation failed:";
      for (const auto& v : check.violations) {
        message += "\n  " + v;
      }
      throw UsageError(message);
    }
  }
  return scenario;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot write " + path.string());
  }
  file << text;
}

std::string format_report_text(const colearn::Scenario& scenario,
                               const colearn::AnalysisReport& report,
                               const colearn::LegalVerdict& verdict,
                               std::size_t samples) {
  char buf[256];
  std::string out;
  out += "scenario: " + scenario.label + "\n";
  std::snprintf(buf, sizeof(buf), "method: %s  dt: %g  horizon: %g\n",
                scenario.solver.method == colearn::SolverMethod::rk4 ? "rk4"
                                                                     : "euler",
                scenario.solver.dt, scenario.solver.horizon);
  out += buf;
  std::snprintf(buf, sizeof(buf), "samples: %zu\n", samples);
  out += buf;
  std::snprintf(buf, sizeof(buf), "positive_fraction: %.6f\n",
                report.positive_fraction);
  out += buf;
  std::snprintf(buf, sizeof(buf), "verdict: %s (threshold %.3f)\n",
                colearn::to_string(verdict.outcome), verdict.threshold);
  out += buf;
  std::snprintf(buf, sizeof(buf), "peak_c: %.6f\n", report.peak_c);
  out += buf;
  std::snprintf(buf, sizeof(buf), "u_peak: %.6f at t=%.4f\n", report.u_peak,
                report.u_peak_time);
  out += buf;
  std::snprintf(buf, sizeof(buf), "min_t: %.6f at t=%.4f\n", report.min_t,
                report.min_t_time);
  out += buf;
  if (report.trust_collapse_time) {
    std::snprintf(buf, sizeof(buf), "trust_collapse_time: %.4f\n",
                  *report.trust_collapse_time);
    out += buf;
  } else {
    out += "trust_collapse_time: none\n";
  }
  std::snprintf(buf, sizeof(buf), "guard_active_fraction: %.6f\n",
                report.guard_active_fraction);
  out += buf;
  std::snprintf(buf, sizeof(buf), "cumulative_compute_cost: %.6f\n",
                report.cumulative_compute_cost);
  out += buf;
  const colearn::StockState& f = report.final_state;
  std::snprintf(buf, sizeof(buf),
                "final: H=%.6f A=%.6f S=%.6f T=%.6f U=%.6f C=%.6f\n", f.h, f.a,
                f.s, f.t, f.u, f.c);
  out += buf;
  return out;
}

nlohmann::json report_to_json(const colearn::AnalysisReport& report,
                              const colearn::LegalVerdict& verdict) {
  nlohmann::json j;
  j["positive_fraction"] = report.positive_fraction;
  j["verdict"] = colearn::to_string(verdict.outcome);
  j["legal_threshold"] = verdict.threshold;
  j["peak_c"] = report.peak_c;
  j["u_peak"] = report.u_peak;
  j["u_peak_time"] = report.u_peak_time;
  j["min_t"] = report.min_t;
  j["min_t_time"] = report.min_t_time;
  if (report.trust_collapse_time) {
    j["trust_collapse_time"] = *report.trust_collapse_time;
  } else {
    j["trust_collapse_time"] = nullptr;
  }
  j["guard_active_fraction"] = report.guard_active_fraction;
  j["cumulative_compute_cost"] = report.cumulative_compute_cost;
  j["final_state"] = {
      {"h", report.final_state.h}, {"a", report.final_state.a},
      {"s", report.final_state.s}, {"t", report.final_state.t},
      {"u", report.final_state.u}, {"c", report.final_state.c}};
  return j;
}

int cmd_run(const CommonOptions& opts) {
  const colearn::Scenario scenario = load_scenario(opts);
  const colearn::Trajectory traj = colearn::simulate(scenario);
  const colearn::ProportionalityTrace trace = colearn::score_trajectory(
      traj, scenario.schedules.sigma_env, scenario.proportionality);
  const std::vector<double> dq =
      colearn::decision_quality_series(traj, scenario.dq_weights);
  const colearn::AnalysisReport report = colearn::metrics(traj, trace);
  const colearn::LegalVerdict verdict =
      colearn::assess(trace, scenario.proportionality);

  const std::filesystem::path out_dir{opts.out_dir};
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / (scenario.label + "_trajectory.csv"),
             colearn::write_trajectory_csv(traj, trace, dq));
  write_file(out_dir / (scenario.label + "_chart.svg"),
             colearn::emit_chart_svg(traj, trace));
  const std::string summary =
      format_report_text(scenario, report, verdict, traj.size());
  write_file(out_dir / (scenario.label + "_summary.txt"), summary);

  if (opts.json) {
    std::cout << report_to_json(report, verdict).dump(2) << "\n";
  } else {
    std::cout << summary;
  }
  return kExitOk;
}

int cmd_sweep(const CommonOptions& opts, const std::string& param,
              const std::string& values_csv) {
  const colearn::Scenario scenario = load_scenario(opts);

  colearn::SweepSpec spec;
  spec.parameter_path = param;
  std::stringstream ss(values_csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      spec.values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("--values expects numbers, got '" + item + "'");
    }
  }
  if (spec.values.empty()) {
    throw UsageError("--values must list at least one value");
  }

  const std::vector<colearn::SweepRow> rows = colearn::sweep(scenario, spec);

  std::string csv = "value,positive_fraction,peak_c,u_peak,verdict\n";
  char buf[160];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof(buf), "%.9g,%.9f,%.9f,%.9f,%s\n", row.value,
                  row.report.positive_fraction, row.report.peak_c,
                  row.report.u_peak, colearn::to_string(row.verdict.outcome));
    csv += buf;
  }

  const std::filesystem::path out_dir{opts.out_dir};
  std::filesystem::create_directories(out_dir);
  std::string file_stem = param;
  for (char& ch : file_stem) {
    if (ch == '.') {
      ch = '_';
    }
  }
  write_file(out_dir / ("sweep_" + file_stem + ".csv"), csv);

  if (opts.json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json entry = report_to_json(row.report, row.verdict);
      entry["value"] = row.value;
      j.push_back(entry);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << csv;
  }
  return kExitOk;
}

int cmd_calibrate(const CommonOptions& opts,
                  const std::vector<std::string>& axis_args, double target,
                  double tolerance) {
  const colearn::Scenario scenario = load_scenario(opts);

  colearn::CalibrationSpec spec;
  spec.target = target;
  spec.tolerance = tolerance;
  if (axis_args.empty()) {
    // Default calibration: the volatility spike time and the baseline
    // collateral exposure, the two knobs the score is most sensitive to.
    spec.axes.push_back({"schedules.sigma_env.spike_time", 0.3, 0.6, 16});
    spec.axes.push_back({"proportionality.c0", 0.2, 0.35, 16});
  } else {
    for (const std::string& arg : axis_args) {
      // PATH=LO:HI:N
      const std::size_t eq = arg.find('=');
      if (eq == std::string::npos) {
        throw UsageError("--axis expects PATH=LO:HI:N, got '" + arg + "'");
      }
      colearn::CalibrationAxis axis;
      axis.parameter_path = arg.substr(0, eq);
      const std::string range = arg.substr(eq + 1);
      const std::size_t c1 = range.find(':');
      const std::size_t c2 =
          c1 == std::string::npos ? std::string::npos : range.find(':', c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos) {
        throw UsageError("--axis expects PATH=LO:HI:N, got '" + arg + "'");
      }
      try {
        axis.lo = std::stod(range.substr(0, c1));
        axis.hi = std::stod(range.substr(c1 + 1, c2 - c1 - 1));
        axis.resolution = std::stoi(range.substr(c2 + 1));
      } catch (const std::exception&) {
        throw UsageError("--axis expects PATH=LO:HI:N, got '" + arg + "'");
      }
      spec.axes.push_back(axis);
    }
  }

  const colearn::CalibrationResult result = colearn::calibrate(scenario, spec);

  std::string best;
  best += "target: " + std::to_string(spec.target) + "\n";
  for (std::size_t i = 0; i < result.paths.size(); ++i) {
    best += result.paths[i] + " = " + std::to_string(result.best_values[i]) +
            "\n";
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "achieved_fraction: %.6f\n",
                result.achieved_fraction);
  best += buf;
  std::snprintf(buf, sizeof(buf), "abs_error: %.6f\n", result.error);
  best += buf;
  best += std::string("within_tolerance: ") +
          (result.within_tolerance ? "yes" : "no") + "\n";

  std::string grid_csv;
  for (std::size_t i = 0; i < result.paths.size(); ++i) {
    grid_csv += result.paths[i] + ",";
  }
  grid_csv += "positive_fraction,abs_error\n";
  for (const auto& row : result.grid) {
    for (const double v : row.values) {
      std::snprintf(buf, sizeof(buf), "%.9g,", v);
      grid_csv += buf;
    }
    std::snprintf(buf, sizeof(buf), "%.9f,%.9f\n", row.positive_fraction,
                  row.error);
    grid_csv += buf;
  }

  const std::filesystem::path out_dir{opts.out_dir};
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "calibration_best.txt", best);
  write_file(out_dir / "calibration_grid.csv", grid_csv);

  if (opts.json) {
    nlohmann::json j;
    j["target"] = spec.target;
    j["achieved_fraction"] = result.achieved_fraction;
    j["abs_error"] = result.error;
    j["within_tolerance"] = result.within_tolerance;
    for (std::size_t i = 0; i < result.paths.size(); ++i) {
      j["best"][result.paths[i]] = result.best_values[i];
    }
    j["evaluations"] = result.grid.size();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << best;
  }
  return kExitOk;
}

struct LoopCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

int cmd_check(const CommonOptions& opts) {
  const colearn::Scenario scenario =
      load_scenario(opts, /*require_valid=*/false);
  std::vector<LoopCheck> checks;
  char buf[256];

  const colearn::ValidationResult params_ok =
      colearn::validate_parameters(scenario.rates, scenario.safety);
  {
    LoopCheck check{"params", params_ok.ok(), ""};
    check.detail = params_ok.ok()
                       ? "all parameter constraints hold"
                       : "violated: " + params_ok.violations.front();
    checks.push_back(check);
  }

  const colearn::PolarityMap map =
      colearn::polarity_map(scenario, scenario.initial);
  const colearn::ExogenousInputs inputs = scenario.schedules.at(0.0);

  {
    const double de_dh = map.at("dh", "explanation_quality");
    const double de_dt = map.at("dt_trust", "explanation_quality");
    LoopCheck check{"R1", de_dh > 0.0 && de_dt > 0.0, ""};
    std::snprintf(buf, sizeof(buf),
                  "d(dh)/d(e)=%+.4f, d(dt_trust)/d(e)=%+.4f (both must be > 0)",
                  de_dh, de_dt);
    check.detail = buf;
    checks.push_back(check);
  }
  {
    const double dsig_du = map.at("du_raw", "sigma_env");
    const double dsig_da = map.at("da", "sigma_env");
    const bool pass = std::fabs(dsig_du + scenario.rates.k3) <= 1e-9 &&
                      std::fabs(dsig_da + scenario.rates.beta2) <= 1e-9;
    LoopCheck check{"B1", pass, ""};
    std::snprintf(buf, sizeof(buf),
                  "d(du_raw)/d(sigma)=%+.4f (expect -k3=%+.4f), "
                  "d(da)/d(sigma)=%+.4f (expect -beta2=%+.4f)",
                  dsig_du, -scenario.rates.k3, dsig_da, -scenario.rates.beta2);
    check.detail = buf;
    checks.push_back(check);
  }
  {
    // Supervisory load engages above u_ref; probe a high-authority state.
    colearn::StockState high_u = scenario.initial;
    high_u.u = std::min(1.0, scenario.rates.u_ref + 0.3);
    const colearn::PolarityMap map_high =
        colearn::polarity_map(scenario, high_u);
    const double du_dc = map_high.at("dc", "u");
    // Slew bound probed at the most authority-hungry corner state.
    const colearn::StockState corner{1.0, 0.0, 1.0, 1.0, 0.0, 0.0};
    const colearn::AuxiliaryValues aux = colearn::compute_auxiliaries(
        corner, inputs, scenario.rates, colearn::GuardState{},
        scenario.safety);
    const colearn::StockDerivatives d =
        colearn::derivatives(corner, aux, inputs, scenario.rates,
                             colearn::GuardState{}, scenario.safety);
    const bool slew_ok = std::fabs(d.du) <= scenario.rates.u_slew + 1e-12;
    LoopCheck check{"B2", du_dc > 0.0 && slew_ok, ""};
    std::snprintf(buf, sizeof(buf),
                  "d(dc)/d(u)|u>u_ref=%+.4f (must be > 0), |du|=%.4f <= "
                  "u_slew=%.4f: %s",
                  du_dc, std::fabs(d.du), scenario.rates.u_slew,
                  slew_ok ? "yes" : "no");
    check.detail = buf;
    checks.push_back(check);
  }
  {
    const double du_da = map.at("da", "u");
    LoopCheck check{"R2", du_da > 0.0, ""};
    std::snprintf(buf, sizeof(buf), "d(da)/d(u)=%+.4f (must be > 0)", du_da);
    check.detail = buf;
    checks.push_back(check);
  }
  {
    const colearn::GuardState active{true};
    const colearn::AuxiliaryValues aux = colearn::compute_auxiliaries(
        scenario.initial, inputs, scenario.rates, active, scenario.safety);
    const colearn::StockDerivatives d =
        colearn::derivatives(scenario.initial, aux, inputs, scenario.rates,
                             active, scenario.safety);
    const bool du_forced = d.du <= -scenario.safety.r_safe + 1e-12;
    const bool tr_exact =
        aux.tr_eff == inputs.task_rate * scenario.safety.rho_suppress;
    LoopCheck check{"B3", du_forced && tr_exact, ""};
    std::snprintf(buf, sizeof(buf),
                  "guard active: du=%+.4f <= -r_safe=%+.4f: %s, "
                  "tr_eff=rho*TR exactly: %s",
                  d.du, -scenario.safety.r_safe, du_forced ? "yes" : "no",
                  tr_exact ? "yes" : "no");
    check.detail = buf;
    checks.push_back(check);
  }

  bool all_pass = true;
  if (opts.json) {
    nlohmann::json j;
    for (const auto& check : checks) {
      j[check.name] = {{"pass", check.pass}, {"detail", check.detail}};
      all_pass = all_pass && check.pass;
    }
    j["all_pass"] = all_pass;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& check : checks) {
      std::printf("%-7s %s  %s\n", check.name.c_str(),
                  check.pass ? "PASS" : "FAIL", check.detail.c_str());
      all_pass = all_pass && check.pass;
    }
  }
  return all_pass ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"co-learning mission-planning simulator"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string sweep_param;
  std::string sweep_values;
  std::vector<std::string> calib_axes;
  double calib_target = 0.44;
  double calib_tolerance = 0.05;

  auto add_common = [&opts](CLI::App* cmd, bool with_scenario = true) {
    if (with_scenario) {
      cmd->add_option("scenario", opts.scenario_name,
                      "scenario file, or 'baseline' for the built-in one");
    }
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--set", opts.overrides,
                    "override a parameter: PATH=VALUE (repeatable)");
    cmd->add_option("--dt", opts.dt, "override the solver step size");
    cmd->add_option("--method", opts.method, "solver method: euler or rk4")
        ->check(CLI::IsMember({"euler", "rk4"}));
    cmd->add_flag("--json", opts.json, "machine-readable output on stdout");
  };

  CLI::App* run_cmd =
      app.add_subcommand("run", "simulate and write CSV, SVG, and summary");
  add_common(run_cmd);

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "rerun the scenario across one parameter");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--param", sweep_param, "dotted parameter path")
      ->required();
  sweep_cmd->add_option("--values", sweep_values, "comma-separated values")
      ->required();

  CLI::App* calib_cmd = app.add_subcommand(
      "calibrate", "grid-search parameters toward a target positive fraction");
  add_common(calib_cmd);
  calib_cmd->add_option("--axis", calib_axes,
                        "calibration axis PATH=LO:HI:N (repeatable; default "
                        "spike time and c0)");
  calib_cmd->add_option("--target", calib_target,
                        "target positive fraction (default 0.44)");
  calib_cmd->add_option("--tolerance", calib_tolerance,
                        "acceptable |achieved - target| (default 0.05)");

  CLI::App* check_cmd = app.add_subcommand(
      "check", "verify loop polarities and parameter constraints");
  add_common(check_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (run_cmd->parsed()) {
      return cmd_run(opts);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(opts, sweep_param, sweep_values);
    }
    if (calib_cmd->parsed()) {
      return cmd_calibrate(opts, calib_axes, calib_target, calib_tolerance);
    }
    if (check_cmd->parsed()) {
      return cmd_check(opts);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const colearn::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
