#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "colearn/integrator.hpp"
#include "colearn/proportionality.hpp"
#include "colearn/scenario.hpp"

namespace colearn {

// Detector thresholds and reporting rates. A trust collapse is a stretch of
// at least `collapse_window` during which T falls faster than
// `collapse_rate` per window.
struct AnalysisOptions {
  double collapse_rate = 0.5;
  double collapse_window = 0.05;
  double cost_rate = 1.0;  // compute-cost accrual per unit of authority
};

struct AnalysisReport {
  double positive_fraction = 0.0;
  double peak_c = 0.0;
  double min_t = 0.0;
  double min_t_time = 0.0;
  std::optional<double> trust_collapse_time;
  double u_peak = 0.0;
  double u_peak_time = 0.0;
  double guard_active_fraction = 0.0;
  double cumulative_compute_cost = 0.0;
  StockState final_state;
};

AnalysisReport metrics(const Trajectory& trajectory,
                       const ProportionalityTrace& trace,
                       const AnalysisOptions& options = {});

// Signed sensitivities of each flow to each stock and exogenous input,
// measured by central finite differences at one state. The authority row is
// the raw rate (before the B3 override and slew limit), which is what the
// loop-polarity table speaks about.
struct PolarityMap {
  static constexpr int kFlows = 6;   // dh, da, ds, dt_trust, du_raw, dc
  static constexpr int kInputs = 10;  // h a s t u c sigma e aq tr

  std::array<std::array<double, kInputs>, kFlows> value{};

  static const char* flow_name(int row);
  static const char* input_name(int col);
  static int flow_index(std::string_view name);
  static int input_index(std::string_view name);

  double at(std::string_view flow, std::string_view input) const;
};

PolarityMap polarity_map(const Scenario& scenario, const StockState& state,
                         double fd_step = 1e-6);

struct SweepSpec {
  std::string parameter_path;
  std::vector<double> values;
};

struct SweepRow {
  double value = 0.0;
  AnalysisReport report;
  LegalVerdict verdict;
};

// One full run per value, in the order given.
std::vector<SweepRow> sweep(const Scenario& scenario, const SweepSpec& spec);

struct CalibrationAxis {
  std::string parameter_path;
  double lo = 0.0;
  double hi = 0.0;
  int resolution = 2;  // grid points along this axis, endpoints included
};

struct CalibrationSpec {
  std::vector<CalibrationAxis> axes;
  double target = 0.44;
  double tolerance = 0.05;
};

struct CalibrationRow {
  std::vector<double> values;  // one per axis, in spec order
  double positive_fraction = 0.0;
  double error = 0.0;
};

struct CalibrationResult {
  std::vector<std::string> paths;
  std::vector<double> best_values;
  double achieved_fraction = 0.0;
  double error = 0.0;
  bool within_tolerance = false;
  std::vector<CalibrationRow> grid;  // every evaluation, lexicographic order
};

// Exhaustive grid search minimizing |positive_fraction - target|; ties keep
// the first assignment in lexicographic grid order.
CalibrationResult calibrate(const Scenario& scenario,
                            const CalibrationSpec& spec);

struct ConvergenceResult {
  SolverMethod method = SolverMethod::euler;
  std::vector<double> dts;
  std::vector<double> max_errors;  // max-norm final-state error per dt
  double observed_order = 0.0;     // log-log slope
};

// Measures the observed convergence order of one method against an RK4
// reference at `reference_dt`. The scenario must stay guard-free and
// clamp-free, otherwise the order is undefined and an error is raised.
ConvergenceResult convergence_study(const Scenario& scenario,
                                    const std::vector<double>& dts,
                                    SolverMethod method,
                                    double reference_dt = 1e-6);

}  // namespace colearn
