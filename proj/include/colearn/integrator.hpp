#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "colearn/model.hpp"

namespace colearn {

struct Scenario;

enum class SolverMethod { euler, rk4 };

struct SolverConfig {
  SolverMethod method = SolverMethod::rk4;
  double dt = 0.01;
  double horizon = 1.0;  // normalized mission-window units

  bool operator==(const SolverConfig&) const = default;
};

// Uniformly sampled record of one simulation. All arrays share the same
// length; aux[i] and guards[i] describe the regime in effect from times[i]
// until the next sample.
struct Trajectory {
  std::vector<double> times;
  std::vector<StockState> states;
  std::vector<AuxiliaryValues> aux;
  std::vector<GuardState> guards;
  std::vector<ClampFlags> clamp_flags;

  std::size_t size() const { return times.size(); }
};

// Thrown when an integration step produces a non-finite value, which in
// practice means the rate parameters blew the dynamics up.
class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& message, double time)
      : std::runtime_error(message + " at t=" + std::to_string(time)),
        time_(time) {}

  double time() const { return time_; }

 private:
  double time_;
};

// Advances one fixed step of the hybrid system: the B3 guard transitions on
// the pre-step state, the continuous flows advance over [t, t+dt] with the
// guard held fixed and exogenous inputs sampled at each stage time, and the
// result is projected onto [0,1]^6.
std::pair<StockState, GuardState> step(const StockState& state,
                                       GuardState guard, double t,
                                       const Scenario& scenario,
                                       const SolverConfig& config,
                                       ClampFlags* flags = nullptr);

// Runs the scenario from t=0 to the horizon inclusive. The trajectory has
// horizon/dt + 1 samples (one sample when the horizon is zero).
Trajectory simulate(const Scenario& scenario);

// Thins a trajectory to n evenly spaced samples, always keeping the first
// and last. Returns the input unchanged if it has fewer than n samples.
Trajectory resample(const Trajectory& trajectory, std::size_t n);

}  // namespace colearn
