#include "colearn/integrator.hpp"

#include <cmath>

#include "colearn/scenario.hpp"

namespace colearn {

namespace {

bool finite(const StockState& s) {
  return std::isfinite(s.h) && std::isfinite(s.a) && std::isfinite(s.s) &&
         std::isfinite(s.t) && std::isfinite(s.u) && std::isfinite(s.c);
}

bool finite(const StockDerivatives& d) {
  return std::isfinite(d.dh) && std::isfinite(d.da) && std::isfinite(d.ds) &&
         std::isfinite(d.dt_trust) && std::isfinite(d.du) &&
         std::isfinite(d.dc);
}

StockState advance(const StockState& s, const StockDerivatives& d,
                   double dt) {
  return StockState{s.h + dt * d.dh, s.a + dt * d.da,      s.s + dt * d.ds,
                    s.t + dt * d.dt_trust, s.u + dt * d.du, s.c + dt * d.dc};
}

StockDerivatives eval_flows(const StockState& state, double time,
                            GuardState guard, const Scenario& scenario) {
  const ExogenousInputs inputs = scenario.schedules.at(time);
  const AuxiliaryValues aux = compute_auxiliaries(
      state, inputs, scenario.rates, guard, scenario.safety);
  return derivatives(state, aux, inputs, scenario.rates, guard,
                     scenario.safety);
}

}  // namespace

std::pair<StockState, GuardState> step(const StockState& state,
                                       GuardState guard, double t,
                                       const Scenario& scenario,
                                       const SolverConfig& config,
                                       ClampFlags* flags) {
  const GuardState active_guard =
      update_guard(state, guard, scenario.safety);
  const double dt = config.dt;

  StockState next;
  if (config.method == SolverMethod::euler) {
    const StockDerivatives d = eval_flows(state, t, active_guard, scenario);
    if (!finite(d)) {
      throw SimulationError("non-finite derivative", t);
    }
    next = advance(state, d, dt);
  } else {
    const StockDerivatives d1 = eval_flows(state, t, active_guard, scenario);
    const StockState s2 = advance(state, d1, 0.5 * dt);
    const StockDerivatives d2 =
        eval_flows(s2, t + 0.5 * dt, active_guard, scenario);
    const StockState s3 = advance(state, d2, 0.5 * dt);
    const StockDerivatives d3 =
        eval_flows(s3, t + 0.5 * dt, active_guard, scenario);
    const StockState s4 = advance(state, d3, dt);
    const StockDerivatives d4 =
        eval_flows(s4, t + dt, active_guard, scenario);
    if (!finite(d1) || !finite(d2) || !finite(d3) || !finite(d4)) {
      throw SimulationError("non-finite derivative", t);
    }
    const StockDerivatives combined{
        (d1.dh + 2.0 * d2.dh + 2.0 * d3.dh + d4.dh) / 6.0,
        (d1.da + 2.0 * d2.da + 2.0 * d3.da + d4.da) / 6.0,
        (d1.ds + 2.0 * d2.ds + 2.0 * d3.ds + d4.ds) / 6.0,
        (d1.dt_trust + 2.0 * d2.dt_trust + 2.0 * d3.dt_trust + d4.dt_trust) /
            6.0,
        (d1.du + 2.0 * d2.du + 2.0 * d3.du + d4.du) / 6.0,
        (d1.dc + 2.0 * d2.dc + 2.0 * d3.dc + d4.dc) / 6.0,
    };
    next = advance(state, combined, dt);
  }

  if (!finite(next)) {
    throw SimulationError("non-finite state", t);
  }
  return {clamp_state(next, flags), active_guard};
}

Trajectory simulate(const Scenario& scenario) {
  const SolverConfig& config = scenario.solver;
  const std::size_t steps =
      config.horizon > 0.0
          ? static_cast<std::size_t>(std::llround(config.horizon / config.dt))
          : 0;

  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.aux.reserve(steps + 1);
  traj.guards.reserve(steps + 1);
  traj.clamp_flags.reserve(steps + 1);

  StockState state = scenario.initial;
  GuardState guard = update_guard(state, GuardState{}, scenario.safety);

  auto record = [&](double time, const StockState& s, GuardState g,
                    ClampFlags flags) {
    traj.times.push_back(time);
    traj.states.push_back(s);
    traj.guards.push_back(g);
    traj.aux.push_back(compute_auxiliaries(s, scenario.schedules.at(time),
                                           scenario.rates, g,
                                           scenario.safety));
    traj.clamp_flags.push_back(flags);
  };
  record(0.0, state, guard, ClampFlags{});

  for (std::size_t i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) * config.dt;
    ClampFlags flags;
    auto [next, active_guard] = step(state, guard, t, scenario, config,
                                     &flags);
    state = next;
    // Post-transition guard at the new sample time; the next step re-derives
    // the identical value from its pre-step state.
    guard = update_guard(state, active_guard, scenario.safety);
    record(static_cast<double>(i + 1) * config.dt, state, guard, flags);
  }
  return traj;
}

Trajectory resample(const Trajectory& trajectory, std::size_t n) {
  const std::size_t len = trajectory.size();
  if (n < 2 || len <= n) {
    return trajectory;
  }
  Trajectory out;
  for (std::size_t i = 0; i < n; ++i) {
    // Evenly spaced indices with both endpoints pinned.
    const std::size_t idx =
        (i * (len - 1) + (n - 1) / 2) / (n - 1);
    out.times.push_back(trajectory.times[idx]);
    out.states.push_back(trajectory.states[idx]);
    out.aux.push_back(trajectory.aux[idx]);
    out.guards.push_back(trajectory.guards[idx]);
    out.clamp_flags.push_back(trajectory.clamp_flags[idx]);
  }
  return out;
}

}  // namespace colearn
