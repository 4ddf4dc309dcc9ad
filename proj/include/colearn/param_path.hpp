#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "colearn/scenario.hpp"

namespace colearn {

// Raised on scenario-level configuration problems: unresolvable parameter
// paths, malformed scenario files, or failed validation. The optional line
// number refers to the scenario text being parsed.
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(const std::string& message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                          message
                                    : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Dotted-path addressing into a Scenario, e.g. "rates.k3", "initial.h",
// "proportionality.c0", "solver.dt", "schedules.sigma_env.spike_time".
// Schedule paths: `.base` is the first segment's value; `.spike_time` and
// `.spike_value` address the second segment and require one to exist.
double get_parameter(const Scenario& scenario, std::string_view path);
void set_parameter(Scenario& scenario, std::string_view path, double value);

// String-valued paths ("rates.pg_mode", "solver.method") are accepted here
// alongside every numeric path.
void set_parameter_text(Scenario& scenario, std::string_view path,
                        std::string_view value);

// All addressable numeric paths, in canonical order.
std::vector<std::string> parameter_paths();

}  // namespace colearn
