#pragma once

// Shared generators and helpers for the unit and acceptance suites.

#include <random>

#include "colearn/scenario.hpp"

namespace colearn::testing {

inline StockState random_interior_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  return StockState{dist(rng), dist(rng), dist(rng),
                    dist(rng), dist(rng), dist(rng)};
}

inline Schedule random_schedule(std::mt19937_64& rng, double horizon) {
  std::uniform_int_distribution<int> n_seg(1, 3);
  std::uniform_real_distribution<double> value(0.0, 1.0);
  Schedule schedule;
  const int n = n_seg(rng);
  double t = 0.0;
  for (int i = 0; i < n; ++i) {
    schedule.segments.push_back(ScheduleSegment{t, value(rng)});
    t += std::uniform_real_distribution<double>(0.05, horizon / 2)(rng);
    if (t >= horizon) {
      break;
    }
  }
  return schedule;
}

// A scenario that satisfies every validation constraint, with gains spread
// wide enough to exercise guard activation, slew limiting, and clamping.
inline Scenario random_valid_scenario(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> gain(0.0, 1.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Scenario sc;
  sc.label = "fuzz";
  sc.initial = StockState{unit(rng), unit(rng), unit(rng),
                          unit(rng), unit(rng), unit(rng)};
  sc.rates.alpha1 = gain(rng);
  sc.rates.beta1 = gain(rng);
  sc.rates.alpha2 = gain(rng);
  sc.rates.alpha3 = gain(rng);
  sc.rates.beta2 = gain(rng);
  sc.rates.gamma1 = gain(rng);
  sc.rates.gamma2 = gain(rng);
  sc.rates.delta1 = gain(rng);
  sc.rates.delta2 = gain(rng);
  sc.rates.k1 = gain(rng);
  sc.rates.k2 = gain(rng);
  sc.rates.k3 = gain(rng);
  sc.rates.theta1 = gain(rng);
  sc.rates.theta2 = gain(rng);
  sc.rates.theta3 = gain(rng);
  sc.rates.u_ref = unit(rng);
  sc.rates.u_slew =
      std::uniform_real_distribution<double>(0.1, 2.0)(rng);
  sc.rates.pg_mode = rng() % 2 == 0 ? PgMode::expectation_weighted
                                    : PgMode::literal;

  sc.safety.c_safe =
      std::uniform_real_distribution<double>(0.3, 1.0)(rng);
  sc.safety.hysteresis = std::uniform_real_distribution<double>(
      0.01, 0.9 * sc.safety.c_safe)(rng);
  sc.safety.r_safe = std::uniform_real_distribution<double>(
      0.01, sc.rates.u_slew)(rng);
  sc.safety.rho_suppress =
      std::uniform_real_distribution<double>(0.0, 0.99)(rng);

  const double horizon = sc.solver.horizon;
  sc.schedules.sigma_env = random_schedule(rng, horizon);
  sc.schedules.explanation_quality = random_schedule(rng, horizon);
  sc.schedules.annotation_quality = random_schedule(rng, horizon);
  sc.schedules.task_rate = random_schedule(rng, horizon);
  sc.solver.method =
      rng() % 2 == 0 ? SolverMethod::euler : SolverMethod::rk4;
  return sc;
}

// Baseline with constant environmental uncertainty; stays guard-free,
// clamp-free, and away from the u_ref kink, so the flows are smooth along
// the whole trajectory.
inline Scenario smooth_baseline() {
  Scenario sc = builtin_baseline();
  sc.label = "smooth";
  sc.schedules.sigma_env = Schedule::constant(0.35);
  return sc;
}

// Fast workload ramp that trips the B3 guard early: elevated task
// conversion, initial load just under the threshold, and a task-rate
// drop halfway through.
inline Scenario guard_exercise_scenario() {
  Scenario sc = builtin_baseline();
  sc.label = "guard-exercise";
  sc.rates.theta1 = 3.0;
  sc.initial.c = 0.75;
  sc.schedules.task_rate = Schedule{{{0.0, 1.0}, {0.5, 0.0}}};
  return sc;
}

}  // namespace colearn::testing
