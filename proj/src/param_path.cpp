#include "colearn/param_path.hpp"

#include <charconv>
#include <utility>

namespace colearn {

namespace {

// Table of numeric leaf accessors. Member pointers cannot reach through
// nested structs uniformly, so each entry carries explicit get/set thunks.
struct Accessor {
  const char* path;
  double (*get)(const Scenario&);
  void (*set)(Scenario&, double);
};

#define COLEARN_FIELD(path_literal, member)                      \
  Accessor {                                                     \
    path_literal, [](const Scenario& sc) { return sc.member; },  \
        [](Scenario& sc, double v) { sc.member = v; }            \
  }

constexpr Accessor kAccessors[] = {
    COLEARN_FIELD("initial.h", initial.h),
    COLEARN_FIELD("initial.a", initial.a),
    COLEARN_FIELD("initial.s", initial.s),
    COLEARN_FIELD("initial.t", initial.t),
    COLEARN_FIELD("initial.u", initial.u),
    COLEARN_FIELD("initial.c", initial.c),
    COLEARN_FIELD("rates.alpha1", rates.alpha1),
    COLEARN_FIELD("rates.beta1", rates.beta1),
    COLEARN_FIELD("rates.alpha2", rates.alpha2),
    COLEARN_FIELD("rates.alpha3", rates.alpha3),
    COLEARN_FIELD("rates.beta2", rates.beta2),
    COLEARN_FIELD("rates.gamma1", rates.gamma1),
    COLEARN_FIELD("rates.gamma2", rates.gamma2),
    COLEARN_FIELD("rates.delta1", rates.delta1),
    COLEARN_FIELD("rates.delta2", rates.delta2),
    COLEARN_FIELD("rates.k1", rates.k1),
    COLEARN_FIELD("rates.k2", rates.k2),
    COLEARN_FIELD("rates.k3", rates.k3),
    COLEARN_FIELD("rates.theta1", rates.theta1),
    COLEARN_FIELD("rates.theta2", rates.theta2),
    COLEARN_FIELD("rates.theta3", rates.theta3),
    COLEARN_FIELD("rates.u_ref", rates.u_ref),
    COLEARN_FIELD("rates.u_slew", rates.u_slew),
    COLEARN_FIELD("safety.c_safe", safety.c_safe),
    COLEARN_FIELD("safety.hysteresis", safety.hysteresis),
    COLEARN_FIELD("safety.r_safe", safety.r_safe),
    COLEARN_FIELD("safety.rho_suppress", safety.rho_suppress),
    COLEARN_FIELD("proportionality.w_u", proportionality.w_u),
    COLEARN_FIELD("proportionality.w_as", proportionality.w_as),
    COLEARN_FIELD("proportionality.c0", proportionality.c0),
    COLEARN_FIELD("proportionality.c_u", proportionality.c_u),
    COLEARN_FIELD("proportionality.legal_threshold",
                  proportionality.legal_threshold),
    COLEARN_FIELD("dq_weights.w_h", dq_weights.w_h),
    COLEARN_FIELD("dq_weights.w_a", dq_weights.w_a),
    COLEARN_FIELD("dq_weights.w_s", dq_weights.w_s),
    COLEARN_FIELD("dq_weights.w_c", dq_weights.w_c),
    COLEARN_FIELD("solver.dt", solver.dt),
    COLEARN_FIELD("solver.horizon", solver.horizon),
};

#undef COLEARN_FIELD

Schedule* schedule_by_name(Scenario& scenario, std::string_view name) {
  if (name == "sigma_env") return &scenario.schedules.sigma_env;
  if (name == "explanation_quality") {
    return &scenario.schedules.explanation_quality;
  }
  if (name == "annotation_quality") {
    return &scenario.schedules.annotation_quality;
  }
  if (name == "task_rate") return &scenario.schedules.task_rate;
  return nullptr;
}

// Splits "schedules.<input>.<leaf>" and resolves a pointer to the addressed
// segment field; throws for anything unresolvable.
double* schedule_field(Scenario& scenario, std::string_view path) {
  constexpr std::string_view prefix = "schedules.";
  if (!path.starts_with(prefix)) {
    return nullptr;
  }
  const std::string_view rest = path.substr(prefix.size());
  const std::size_t dot = rest.find('.');
  if (dot == std::string_view::npos) {
    throw ScenarioError("schedule path needs a field: " + std::string(path));
  }
  Schedule* schedule = schedule_by_name(scenario, rest.substr(0, dot));
  if (schedule == nullptr) {
    throw ScenarioError("unknown schedule in path: " + std::string(path));
  }
  const std::string_view leaf = rest.substr(dot + 1);
  if (leaf == "base") {
    if (schedule->segments.empty()) {
      throw ScenarioError("schedule has no segments: " + std::string(path));
    }
    return &schedule->segments.front().value;
  }
  if (leaf == "spike_time" || leaf == "spike_value") {
    if (schedule->segments.size() < 2) {
      throw ScenarioError("schedule has no spike segment: " +
                          std::string(path));
    }
    return leaf == "spike_time" ? &schedule->segments[1].start_time
                                : &schedule->segments[1].value;
  }
  throw ScenarioError("unknown schedule field: " + std::string(path));
}

}  // namespace

double get_parameter(const Scenario& scenario, std::string_view path) {
  for (const auto& acc : kAccessors) {
    if (path == acc.path) {
      return acc.get(scenario);
    }
  }
  if (double* field = schedule_field(const_cast<Scenario&>(scenario), path)) {
    return *field;
  }
  throw ScenarioError("unknown parameter path: " + std::string(path));
}

void set_parameter(Scenario& scenario, std::string_view path, double value) {
  for (const auto& acc : kAccessors) {
    if (path == acc.path) {
      acc.set(scenario, value);
      return;
    }
  }
  if (double* field = schedule_field(scenario, path)) {
    *field = value;
    return;
  }
  throw ScenarioError("unknown parameter path: " + std::string(path));
}

void set_parameter_text(Scenario& scenario, std::string_view path,
                        std::string_view value) {
  if (path == "rates.pg_mode") {
    if (value == "expectation-weighted") {
      scenario.rates.pg_mode = PgMode::expectation_weighted;
    } else if (value == "literal") {
      scenario.rates.pg_mode = PgMode::literal;
    } else {
      throw ScenarioError(
          "pg_mode must be 'expectation-weighted' or 'literal'");
    }
    return;
  }
  if (path == "solver.method") {
    if (value == "euler") {
      scenario.solver.method = SolverMethod::euler;
    } else if (value == "rk4") {
      scenario.solver.method = SolverMethod::rk4;
    } else {
      throw ScenarioError("method must be 'euler' or 'rk4'");
    }
    return;
  }
  if (path == "label") {
    scenario.label = std::string(value);
    return;
  }

  double parsed = 0.0;
  const char* begin = value.data();
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, parsed);
  if (ec != std::errc{} || ptr != end) {
    throw ScenarioError("value for " + std::string(path) +
                        " is not a number: " + std::string(value));
  }
  set_parameter(scenario, path, parsed);
}

std::vector<std::string> parameter_paths() {
  std::vector<std::string> paths;
  for (const auto& acc : kAccessors) {
    paths.emplace_back(acc.path);
  }
  for (const char* sched :
       {"sigma_env", "explanation_quality", "annotation_quality",
        "task_rate"}) {
    for (const char* leaf : {"base", "spike_time", "spike_value"}) {
      paths.push_back(std::string("schedules.") + sched + "." + leaf);
    }
  }
  return paths;
}

}  // namespace colearn
