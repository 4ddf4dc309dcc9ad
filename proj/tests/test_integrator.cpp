#include <doctest.h>

#include <cmath>

#include "colearn/integrator.hpp"
#include "colearn/scenario.hpp"
#include "support.hpp"

using namespace colearn;

namespace {

double max_state_diff(const StockState& a, const StockState& b) {
  return std::max({std::fabs(a.h - b.h), std::fabs(a.a - b.a),
                   std::fabs(a.s - b.s), std::fabs(a.t - b.t),
                   std::fabs(a.u - b.u), std::fabs(a.c - b.c)});
}

bool in_unit_box(const StockState& s) {
  for (const double v : {s.h, s.a, s.s, s.t, s.u, s.c}) {
    if (!(v >= 0.0 && v <= 1.0)) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE_BEGIN("integrator");

TEST_CASE("one Euler step from the baseline matches hand arithmetic") {
  Scenario sc = builtin_baseline();
  sc.solver.method = SolverMethod::euler;
  auto [next, guard] =
      step(sc.initial, GuardState{}, 0.0, sc, sc.solver);
  CHECK_FALSE(guard.b3_active);
  CHECK(std::fabs(next.u - 0.2018) < 1e-12);
  CHECK(std::fabs(next.h - (0.50 + 0.01 * 0.06)) < 1e-12);
  CHECK(std::fabs(next.a - (0.40 + 0.01 * 0.057)) < 1e-12);
  CHECK(std::fabs(next.s - (0.25 + 0.01 * 0.04625)) < 1e-12);
  CHECK(std::fabs(next.t - (0.40 + 0.01 * 0.05)) < 1e-12);
  CHECK(std::fabs(next.c - (0.30 - 0.01 * 0.01)) < 1e-12);
}

TEST_CASE("a zero-rate system is a fixed point of both methods") {
  Scenario sc = builtin_baseline();
  sc.rates = RateParameters{};
  sc.rates.alpha1 = sc.rates.beta1 = sc.rates.alpha2 = sc.rates.alpha3 =
      sc.rates.beta2 = sc.rates.gamma1 = sc.rates.gamma2 = sc.rates.delta1 =
          sc.rates.delta2 = sc.rates.k1 = sc.rates.k2 = sc.rates.k3 =
              sc.rates.theta1 = sc.rates.theta2 = sc.rates.theta3 = 0.0;
  for (const SolverMethod method : {SolverMethod::euler, SolverMethod::rk4}) {
    sc.solver.method = method;
    auto [next, guard] = step(sc.initial, GuardState{}, 0.0, sc, sc.solver);
    CHECK(next == sc.initial);
  }
}

TEST_CASE("rk4 and euler differ by O(dt^2) over a single smooth step") {
  const Scenario sc = colearn::testing::smooth_baseline();
  auto diff_at = [&sc](double dt) {
    SolverConfig euler_cfg{SolverMethod::euler, dt, 1.0};
    SolverConfig rk4_cfg{SolverMethod::rk4, dt, 1.0};
    auto [eu, g1] = step(sc.initial, GuardState{}, 0.0, sc, euler_cfg);
    auto [rk, g2] = step(sc.initial, GuardState{}, 0.0, sc, rk4_cfg);
    return max_state_diff(eu, rk);
  };
  const double d1 = diff_at(1e-3);
  const double d2 = diff_at(5e-4);
  // Halving dt should quarter the gap.
  CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("baseline simulation has the right shape") {
  const Scenario sc = builtin_baseline();
  const Trajectory traj = simulate(sc);
  REQUIRE(traj.size() == 101);
  CHECK(traj.states.size() == 101);
  CHECK(traj.aux.size() == 101);
  CHECK(traj.guards.size() == 101);
  CHECK(traj.clamp_flags.size() == 101);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < traj.size(); ++i) {
    CHECK(in_unit_box(traj.states[i]));
  }
  for (std::size_t i = 1; i < traj.size(); ++i) {
    CHECK(traj.times[i] > traj.times[i - 1]);
  }
}

TEST_CASE("zero horizon yields a single-sample trajectory") {
  Scenario sc = builtin_baseline();
  sc.solver.horizon = 0.0;
  sc.schedules.sigma_env = Schedule::constant(0.35);
  const Trajectory traj = simulate(sc);
  REQUIRE(traj.size() == 1);
  CHECK(traj.states[0] == sc.initial);
  CHECK(traj.times[0] == 0.0);
}

TEST_CASE("simulation is deterministic") {
  const Scenario sc = builtin_baseline();
  const Trajectory t1 = simulate(sc);
  const Trajectory t2 = simulate(sc);
  REQUIRE(t1.size() == t2.size());
  for (std::size_t i = 0; i < t1.size(); ++i) {
    CHECK(t1.states[i] == t2.states[i]);
    CHECK(t1.aux[i] == t2.aux[i]);
    CHECK(t1.guards[i] == t2.guards[i]);
  }
}

TEST_CASE("guard transitions happen at step boundaries, once per step") {
  const Scenario sc = colearn::testing::guard_exercise_scenario();
  const Trajectory traj = simulate(sc);

  int toggles = 0;
  std::size_t first_active = traj.size();
  for (std::size_t i = 1; i < traj.size(); ++i) {
    if (traj.guards[i].b3_active != traj.guards[i - 1].b3_active) {
      ++toggles;
      if (traj.guards[i].b3_active && first_active == traj.size()) {
        first_active = i;
      }
    }
  }
  CHECK(toggles == 1);
  REQUIRE(first_active < traj.size());
  // The load ramp crosses c_safe within the first few steps.
  CHECK(traj.times[first_active] == doctest::Approx(0.02).epsilon(1e-12));
  // While active, the recorded effective task rate carries the suppression.
  for (std::size_t i = first_active; i < traj.size(); ++i) {
    const double tr = sc.schedules.task_rate.value_at(traj.times[i]);
    CHECK(traj.aux[i].tr_eff == tr * sc.safety.rho_suppress);
  }
}

TEST_CASE("exploding rates are rejected with the failing time") {
  Scenario sc = builtin_baseline();
  sc.rates.beta1 = 1e308;
  sc.rates.theta1 = 1e308;
  sc.solver.method = SolverMethod::rk4;
  CHECK_THROWS_AS(simulate(sc), SimulationError);
  try {
    simulate(sc);
  } catch (const SimulationError& e) {
    CHECK(e.time() >= 0.0);
    CHECK(std::string(e.what()).find("at t=") != std::string::npos);
  }
}

TEST_CASE("schedules apply their new value exactly at the segment start") {
  const Scenario sc = builtin_baseline();
  CHECK(sc.schedules.sigma_env.value_at(0.49) == 0.35);
  CHECK(sc.schedules.sigma_env.value_at(0.5) == 0.70);
  CHECK(sc.schedules.sigma_env.value_at(0.75) == 0.70);
  CHECK(sc.schedules.sigma_env.value_at(1.0) == 0.70);
}

TEST_CASE("resample decimates evenly and keeps the endpoints") {
  const Scenario sc = builtin_baseline();
  const Trajectory traj = simulate(sc);
  REQUIRE(traj.size() == 101);

  const Trajectory thin = resample(traj, 11);
  REQUIRE(thin.size() == 11);
  for (std::size_t i = 0; i < 11; ++i) {
    CHECK(thin.times[i] == traj.times[i * 10]);
    CHECK(thin.states[i] == traj.states[i * 10]);
  }

  const Trajectory pair = resample(traj, 2);
  REQUIRE(pair.size() == 2);
  CHECK(pair.times.front() == traj.times.front());
  CHECK(pair.times.back() == traj.times.back());

  const Trajectory same = resample(traj, 101);
  CHECK(same.size() == 101);
  const Trajectory bigger = resample(traj, 500);
  CHECK(bigger.size() == 101);
}

TEST_SUITE_END();
