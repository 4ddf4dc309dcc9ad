#pragma once

#include <string>

#include "colearn/integrator.hpp"
#include "colearn/model.hpp"
#include "colearn/proportionality.hpp"
#include "colearn/schedule.hpp"

namespace colearn {

// A complete simulation configuration. The member defaults reproduce the
// built-in baseline: a mission-planning cell with a mid-expertise operator,
// a moderately competent decision-support agent, cautious trust, low
// delegated authority, and environmental uncertainty stepping 0.35 -> 0.70
// halfway through the window.
struct Scenario {
  std::string label = "baseline";
  StockState initial{0.50, 0.40, 0.25, 0.40, 0.20, 0.30};
  RateParameters rates;
  SafetyPolicy safety;
  ProportionalityParams proportionality;
  DecisionQualityWeights dq_weights;
  InputSchedules schedules{
      Schedule{{{0.0, 0.35}, {0.5, 0.70}}},  // sigma_env
      Schedule::constant(0.75),              // explanation_quality
      Schedule::constant(0.65),              // annotation_quality
      Schedule::constant(0.5),               // task_rate
  };
  SolverConfig solver;

  bool operator==(const Scenario&) const = default;
};

Scenario builtin_baseline();

// Checks every component invariant: parameter and policy constraints,
// initial stocks in [0,1], weight normalization, solver limits, and
// schedule ordering/ranges.
ValidationResult validate_scenario(const Scenario& scenario);

}  // namespace colearn
