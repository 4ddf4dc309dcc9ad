#include "colearn/scenario.hpp"

#include <cmath>
#include <string>

namespace colearn {

Scenario builtin_baseline() { return Scenario{}; }

namespace {

void check_schedule(const Schedule& schedule, const char* name,
                    double horizon, ValidationResult& result) {
  if (schedule.segments.empty()) {
    result.violations.push_back(std::string(name) +
                                ": schedule must have at least one segment");
    return;
  }
  if (schedule.segments.front().start_time != 0.0) {
    result.violations.push_back(std::string(name) +
                                ": first segment must start at 0");
  }
  double prev = -1.0;
  for (const auto& seg : schedule.segments) {
    if (seg.start_time <= prev) {
      result.violations.push_back(std::string(name) +
                                  ": segment times must increase");
      break;
    }
    prev = seg.start_time;
  }
  for (const auto& seg : schedule.segments) {
    if (!(seg.start_time >= 0.0 && seg.start_time <= horizon)) {
      result.violations.push_back(std::string(name) +
                                  ": segment times must lie in [0, horizon]");
      break;
    }
  }
  for (const auto& seg : schedule.segments) {
    if (!(seg.value >= 0.0 && seg.value <= 1.0)) {
      result.violations.push_back(std::string(name) +
                                  ": values must lie in [0,1]");
      break;
    }
  }
}

}  // namespace

ValidationResult validate_scenario(const Scenario& scenario) {
  ValidationResult result = validate_parameters(scenario.rates,
                                                scenario.safety);

  const struct {
    const char* name;
    double value;
  } stocks[] = {
      {"initial.h", scenario.initial.h}, {"initial.a", scenario.initial.a},
      {"initial.s", scenario.initial.s}, {"initial.t", scenario.initial.t},
      {"initial.u", scenario.initial.u}, {"initial.c", scenario.initial.c},
  };
  for (const auto& st : stocks) {
    if (!(st.value >= 0.0 && st.value <= 1.0)) {
      result.violations.push_back(std::string(st.name) +
                                  " must be in [0,1]");
    }
  }

  for (const auto& v : validate_proportionality(scenario.proportionality)
                           .violations) {
    result.violations.push_back(v);
  }
  for (const auto& v : validate_dq_weights(scenario.dq_weights).violations) {
    result.violations.push_back(v);
  }

  const SolverConfig& solver = scenario.solver;
  if (!(solver.horizon >= 0.0) || !std::isfinite(solver.horizon)) {
    result.violations.emplace_back("solver.horizon must be >= 0");
  }
  if (!(solver.dt > 0.0) || !std::isfinite(solver.dt)) {
    result.violations.emplace_back("solver.dt must be > 0");
  } else if (solver.horizon > 0.0 && solver.dt > solver.horizon) {
    result.violations.emplace_back("solver.dt must not exceed the horizon");
  } else if (solver.horizon / solver.dt > 1e9) {
    result.violations.emplace_back(
        "solver.horizon/dt exceeds the step-count limit");
  }

  check_schedule(scenario.schedules.sigma_env, "schedules.sigma_env",
                 solver.horizon, result);
  check_schedule(scenario.schedules.explanation_quality,
                 "schedules.explanation_quality", solver.horizon, result);
  check_schedule(scenario.schedules.annotation_quality,
                 "schedules.annotation_quality", solver.horizon, result);
  check_schedule(scenario.schedules.task_rate, "schedules.task_rate",
                 solver.horizon, result);
  return result;
}

}  // namespace colearn
