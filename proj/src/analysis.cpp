#include "colearn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "colearn/param_path.hpp"

namespace colearn {

AnalysisReport metrics(const Trajectory& trajectory,
                       const ProportionalityTrace& trace,
                       const AnalysisOptions& options) {
  AnalysisReport report;
  const std::size_t n = trajectory.size();
  if (n == 0) {
    return report;
  }

  report.positive_fraction = trace.positive_fraction;
  report.final_state = trajectory.states.back();

  report.peak_c = trajectory.states[0].c;
  report.min_t = trajectory.states[0].t;
  report.min_t_time = trajectory.times[0];
  report.u_peak = trajectory.states[0].u;
  report.u_peak_time = trajectory.times[0];
  std::size_t guard_samples = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const StockState& s = trajectory.states[i];
    report.peak_c = std::max(report.peak_c, s.c);
    if (s.t < report.min_t) {
      report.min_t = s.t;
      report.min_t_time = trajectory.times[i];
    }
    if (s.u > report.u_peak) {
      report.u_peak = s.u;
      report.u_peak_time = trajectory.times[i];
    }
    if (trajectory.guards[i].b3_active) {
      ++guard_samples;
    }
  }
  report.guard_active_fraction =
      static_cast<double>(guard_samples) / static_cast<double>(n);

  // Trapezoidal integral of cost_rate * U over the window.
  double cost = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dt = trajectory.times[i + 1] - trajectory.times[i];
    cost += 0.5 * dt *
            (trajectory.states[i].u + trajectory.states[i + 1].u);
  }
  report.cumulative_compute_cost = options.cost_rate * cost;

  // Trust collapse: first run of at least collapse_window during which the
  // recorded T falls faster than collapse_rate per window.
  if (n >= 2) {
    const double dt = trajectory.times[1] - trajectory.times[0];
    if (dt > 0.0) {
      const std::size_t need = static_cast<std::size_t>(
          std::ceil(options.collapse_window / dt));
      std::size_t run = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const double rate =
            (trajectory.states[i + 1].t - trajectory.states[i].t) / dt;
        run = rate < -options.collapse_rate ? run + 1 : 0;
        if (run >= need && need > 0) {
          report.trust_collapse_time = trajectory.times[i + 1 - run];
          break;
        }
      }
    }
  }
  return report;
}

namespace {

constexpr const char* kFlowNames[PolarityMap::kFlows] = {
    "dh", "da", "ds", "dt_trust", "du_raw", "dc"};
constexpr const char* kInputNames[PolarityMap::kInputs] = {
    "h",         "a",
    "s",         "t",
    "u",         "c",
    "sigma_env", "explanation_quality",
    "annotation_quality", "task_rate"};

// Raw-rate flow vector used for the sensitivity map: du is reported before
// the guard/slew mechanics so the B1 slope is exactly -k3.
std::array<double, PolarityMap::kFlows> flows_at(
    const StockState& state, const ExogenousInputs& inputs,
    const Scenario& scenario) {
  const GuardState guard{};  // interior precondition: B3 inactive
  const AuxiliaryValues aux = compute_auxiliaries(
      state, inputs, scenario.rates, guard, scenario.safety);
  const StockDerivatives d = derivatives(state, aux, inputs, scenario.rates,
                                         guard, scenario.safety);
  return {d.dh,
          d.da,
          d.ds,
          d.dt_trust,
          raw_authority_rate(state, inputs, scenario.rates),
          d.dc};
}

double* select_variable(StockState& state, ExogenousInputs& inputs,
                        int col) {
  switch (col) {
    case 0: return &state.h;
    case 1: return &state.a;
    case 2: return &state.s;
    case 3: return &state.t;
    case 4: return &state.u;
    case 5: return &state.c;
    case 6: return &inputs.sigma_env;
    case 7: return &inputs.explanation_quality;
    case 8: return &inputs.annotation_quality;
    case 9: return &inputs.task_rate;
  }
  return nullptr;
}

}  // namespace

const char* PolarityMap::flow_name(int row) { return kFlowNames[row]; }
const char* PolarityMap::input_name(int col) { return kInputNames[col]; }

int PolarityMap::flow_index(std::string_view name) {
  for (int i = 0; i < kFlows; ++i) {
    if (name == kFlowNames[i]) return i;
  }
  return -1;
}

int PolarityMap::input_index(std::string_view name) {
  for (int i = 0; i < kInputs; ++i) {
    if (name == kInputNames[i]) return i;
  }
  return -1;
}

double PolarityMap::at(std::string_view flow, std::string_view input) const {
  const int row = flow_index(flow);
  const int col = input_index(input);
  if (row < 0 || col < 0) {
    throw std::invalid_argument("unknown polarity entry");
  }
  return value[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
}

PolarityMap polarity_map(const Scenario& scenario, const StockState& state,
                         double fd_step) {
  PolarityMap map;
  const ExogenousInputs base_inputs = scenario.schedules.at(0.0);

  for (int col = 0; col < PolarityMap::kInputs; ++col) {
    StockState s_plus = state;
    ExogenousInputs in_plus = base_inputs;
    StockState s_minus = state;
    ExogenousInputs in_minus = base_inputs;

    double* vp = select_variable(s_plus, in_plus, col);
    double* vm = select_variable(s_minus, in_minus, col);
    const double center = *vp;
    *vp = center + fd_step;
    *vm = center - fd_step;
    if (*vp == center || *vm == center) {
      throw std::invalid_argument(
          "finite-difference step underflows at this state");
    }

    const auto f_plus = flows_at(s_plus, in_plus, scenario);
    const auto f_minus = flows_at(s_minus, in_minus, scenario);
    for (int row = 0; row < PolarityMap::kFlows; ++row) {
      map.value[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
          (f_plus[static_cast<std::size_t>(row)] -
           f_minus[static_cast<std::size_t>(row)]) /
          (2.0 * fd_step);
    }
  }
  return map;
}

std::vector<SweepRow> sweep(const Scenario& scenario, const SweepSpec& spec) {
  if (spec.values.empty()) {
    throw ScenarioError("sweep needs at least one value");
  }
  std::vector<SweepRow> rows;
  rows.reserve(spec.values.size());
  for (const double value : spec.values) {
    Scenario variant = scenario;
    set_parameter(variant, spec.parameter_path, value);
    const ValidationResult check = validate_scenario(variant);
    if (!check.ok()) {
      throw ScenarioError("sweep value " + std::to_string(value) +
                          " fails validation: " + check.violations.front());
    }
    const Trajectory traj = simulate(variant);
    const ProportionalityTrace trace = score_trajectory(
        traj, variant.schedules.sigma_env, variant.proportionality);
    SweepRow row;
    row.value = value;
    row.report = metrics(traj, trace);
    row.verdict = assess(trace, variant.proportionality);
    rows.push_back(std::move(row));
  }
  return rows;
}

CalibrationResult calibrate(const Scenario& scenario,
                            const CalibrationSpec& spec) {
  if (spec.axes.empty()) {
    throw ScenarioError("calibration needs at least one axis");
  }
  std::size_t grid_size = 1;
  for (const auto& axis : spec.axes) {
    if (axis.resolution < 2) {
      throw ScenarioError("calibration axis " + axis.parameter_path +
                          " needs resolution >= 2");
    }
    if (!(axis.lo <= axis.hi)) {
      throw ScenarioError("calibration axis " + axis.parameter_path +
                          " has an empty range");
    }
    grid_size *= static_cast<std::size_t>(axis.resolution);
  }
  if (grid_size > 1000000) {
    throw ScenarioError("calibration grid exceeds 1e6 evaluations");
  }

  CalibrationResult result;
  for (const auto& axis : spec.axes) {
    result.paths.push_back(axis.parameter_path);
  }
  result.grid.reserve(grid_size);

  const std::size_t n_axes = spec.axes.size();
  std::vector<int> index(n_axes, 0);
  auto axis_value = [&](std::size_t ax) {
    const auto& a = spec.axes[ax];
    return a.lo + (a.hi - a.lo) * index[ax] / (a.resolution - 1);
  };

  bool done = false;
  while (!done) {
    Scenario variant = scenario;
    CalibrationRow row;
    row.values.reserve(n_axes);
    for (std::size_t ax = 0; ax < n_axes; ++ax) {
      const double v = axis_value(ax);
      row.values.push_back(v);
      set_parameter(variant, spec.axes[ax].parameter_path, v);
    }
    const ValidationResult check = validate_scenario(variant);
    if (!check.ok()) {
      throw ScenarioError("calibration point fails validation: " +
                          check.violations.front());
    }
    const Trajectory traj = simulate(variant);
    const ProportionalityTrace trace = score_trajectory(
        traj, variant.schedules.sigma_env, variant.proportionality);
    row.positive_fraction = trace.positive_fraction;
    row.error = std::fabs(trace.positive_fraction - spec.target);
    result.grid.push_back(row);

    if (result.grid.size() == 1 || row.error < result.error) {
      result.best_values = row.values;
      result.achieved_fraction = row.positive_fraction;
      result.error = row.error;
    }

    // Odometer increment, last axis fastest: lexicographic order.
    done = true;
    for (std::size_t ax = n_axes; ax-- > 0;) {
      if (++index[ax] < spec.axes[ax].resolution) {
        done = false;
        break;
      }
      index[ax] = 0;
    }
  }
  result.within_tolerance = result.error <= spec.tolerance;
  return result;
}

ConvergenceResult convergence_study(const Scenario& scenario,
                                    const std::vector<double>& dts,
                                    SolverMethod method,
                                    double reference_dt) {
  if (dts.size() < 3) {
    throw ScenarioError("convergence study needs at least 3 step sizes");
  }
  for (std::size_t i = 0; i < dts.size(); ++i) {
    for (std::size_t j = i + 1; j < dts.size(); ++j) {
      if (dts[i] == dts[j]) {
        throw ScenarioError("distinct step sizes required");
      }
    }
  }

  // Lean integration loop: the reference run takes a million steps, so skip
  // trajectory recording and just watch for guard/clamp events.
  auto run_final = [&](double dt, SolverMethod m) {
    Scenario variant = scenario;
    variant.solver.dt = dt;
    variant.solver.method = m;
    const std::size_t steps = static_cast<std::size_t>(
        std::llround(variant.solver.horizon / dt));
    StockState state = variant.initial;
    GuardState guard = update_guard(state, GuardState{}, variant.safety);
    for (std::size_t i = 0; i < steps; ++i) {
      ClampFlags flags;
      auto [next, guard_used] =
          step(state, guard, static_cast<double>(i) * dt, variant,
               variant.solver, &flags);
      if (guard_used.b3_active) {
        throw ScenarioError(
            "guard activated during convergence study; order undefined");
      }
      if (flags.any()) {
        throw ScenarioError(
            "state clamped during convergence study; order undefined");
      }
      state = next;
      guard = guard_used;
    }
    return state;
  };

  const StockState reference = run_final(reference_dt, SolverMethod::rk4);

  ConvergenceResult result;
  result.method = method;
  result.dts = dts;
  for (const double dt : dts) {
    const StockState final_state = run_final(dt, method);
    const double err = std::max({std::fabs(final_state.h - reference.h),
                                 std::fabs(final_state.a - reference.a),
                                 std::fabs(final_state.s - reference.s),
                                 std::fabs(final_state.t - reference.t),
                                 std::fabs(final_state.u - reference.u),
                                 std::fabs(final_state.c - reference.c)});
    result.max_errors.push_back(err);
  }

  // Least-squares slope of log(error) against log(dt).
  const std::size_t n = dts.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(result.dts[i]);
    const double y = std::log(std::max(result.max_errors[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  result.observed_order = (static_cast<double>(n) * sxy - sx * sy) / denom;
  return result;
}

}  // namespace colearn
