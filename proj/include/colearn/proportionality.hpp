#pragma once

#include <vector>

#include "colearn/integrator.hpp"
#include "colearn/model.hpp"
#include "colearn/schedule.hpp"

namespace colearn {

struct ProportionalityParams {
  double w_u = 0.6;   // authority weight in military advantage
  double w_as = 0.4;  // competence-awareness weight
  double c0 = 0.25;   // baseline collateral exposure
  double c_u = 0.8;   // authority amplification of collateral exposure
  double legal_threshold = 0.5;  // minimum positive fraction to proceed

  bool operator==(const ProportionalityParams&) const = default;
};

// Per-sample advantage/damage balance over a trajectory. score[i] is
// exactly ma[i] - cd[i]; positive_fraction counts samples with score > 0
// (ties are non-positive).
struct ProportionalityTrace {
  std::vector<double> ma;
  std::vector<double> cd;
  std::vector<double> score;
  double positive_fraction = 0.0;
};

enum class VerdictOutcome { proceed, delay, replan_or_abort };

struct LegalVerdict {
  VerdictOutcome outcome = VerdictOutcome::replan_or_abort;
  double positive_fraction = 0.0;
  double threshold = 0.0;
};

// Contribution weights for the collaborative decision-quality metric.
// w_h + w_a + w_s must be 1 (within 1e-9); w_c discounts cognitive load.
struct DecisionQualityWeights {
  double w_h = 0.4;
  double w_a = 0.3;
  double w_s = 0.3;
  double w_c = 0.5;

  bool operator==(const DecisionQualityWeights&) const = default;
};

// ma = w_u*U + w_as*A*S
double military_advantage(const StockState& state,
                          const ProportionalityParams& params);

// cd = sigma_env*(c0 + c_u*U); forcing U to zero caps it at sigma_env*c0.
double collateral_damage(const StockState& state, double sigma_env,
                         const ProportionalityParams& params);

ProportionalityTrace score_trajectory(const Trajectory& trajectory,
                                      const Schedule& sigma_schedule,
                                      const ProportionalityParams& params);

// proceed at or above the legal threshold, replan_or_abort below half of
// it, delay in between.
LegalVerdict assess(const ProportionalityTrace& trace,
                    const ProportionalityParams& params);

// dq = (w_h*H + w_a*A + w_s*S) * (1 - w_c*C)
double decision_quality(const StockState& state,
                        const DecisionQualityWeights& weights);

std::vector<double> decision_quality_series(
    const Trajectory& trajectory, const DecisionQualityWeights& weights);

ValidationResult validate_proportionality(const ProportionalityParams& params);
ValidationResult validate_dq_weights(const DecisionQualityWeights& weights);

const char* to_string(VerdictOutcome outcome);

}  // namespace colearn
