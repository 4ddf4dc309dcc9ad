#include "colearn/proportionality.hpp"

#include <cmath>

namespace colearn {

double military_advantage(const StockState& state,
                          const ProportionalityParams& params) {
  return params.w_u * state.u + params.w_as * state.a * state.s;
}

double collateral_damage(const StockState& state, double sigma_env,
                         const ProportionalityParams& params) {
  return sigma_env * (params.c0 + params.c_u * state.u);
}

ProportionalityTrace score_trajectory(const Trajectory& trajectory,
                                      const Schedule& sigma_schedule,
                                      const ProportionalityParams& params) {
  ProportionalityTrace trace;
  const std::size_t n = trajectory.size();
  trace.ma.reserve(n);
  trace.cd.reserve(n);
  trace.score.reserve(n);

  std::size_t positives = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sigma = sigma_schedule.value_at(trajectory.times[i]);
    const double ma = military_advantage(trajectory.states[i], params);
    const double cd = collateral_damage(trajectory.states[i], sigma, params);
    const double score = ma - cd;
    trace.ma.push_back(ma);
    trace.cd.push_back(cd);
    trace.score.push_back(score);
    if (score > 0.0) {  // ties count as non-positive
      ++positives;
    }
  }
  trace.positive_fraction =
      n == 0 ? 0.0 : static_cast<double>(positives) / static_cast<double>(n);
  return trace;
}

LegalVerdict assess(const ProportionalityTrace& trace,
                    const ProportionalityParams& params) {
  LegalVerdict verdict;
  verdict.positive_fraction = trace.positive_fraction;
  verdict.threshold = params.legal_threshold;
  if (trace.positive_fraction >= params.legal_threshold) {
    verdict.outcome = VerdictOutcome::proceed;
  } else if (trace.positive_fraction < 0.5 * params.legal_threshold) {
    verdict.outcome = VerdictOutcome::replan_or_abort;
  } else {
    verdict.outcome = VerdictOutcome::delay;
  }
  return verdict;
}

double decision_quality(const StockState& state,
                        const DecisionQualityWeights& weights) {
  return (weights.w_h * state.h + weights.w_a * state.a +
          weights.w_s * state.s) *
         (1.0 - weights.w_c * state.c);
}

std::vector<double> decision_quality_series(
    const Trajectory& trajectory, const DecisionQualityWeights& weights) {
  std::vector<double> series;
  series.reserve(trajectory.size());
  for (const auto& state : trajectory.states) {
    series.push_back(decision_quality(state, weights));
  }
  return series;
}

ValidationResult validate_proportionality(
    const ProportionalityParams& params) {
  ValidationResult result;
  const struct {
    const char* name;
    double value;
  } coeffs[] = {
      {"w_u", params.w_u},
      {"w_as", params.w_as},
      {"c0", params.c0},
      {"c_u", params.c_u},
  };
  for (const auto& c : coeffs) {
    if (!(c.value >= 0.0)) {
      result.violations.push_back(std::string("proportionality.") + c.name +
                                  " must be >= 0");
    }
  }
  if (!(params.legal_threshold > 0.0 && params.legal_threshold <= 1.0)) {
    result.violations.emplace_back("legal_threshold must be in (0,1]");
  }
  return result;
}

ValidationResult validate_dq_weights(const DecisionQualityWeights& weights) {
  ValidationResult result;
  const double sum = weights.w_h + weights.w_a + weights.w_s;
  if (!(std::fabs(sum - 1.0) <= 1e-9)) {
    result.violations.emplace_back("dq_weights w_h+w_a+w_s must equal 1");
  }
  if (!(weights.w_c >= 0.0 && weights.w_c <= 1.0)) {
    result.violations.emplace_back("dq_weights.w_c must be in [0,1]");
  }
  return result;
}

const char* to_string(VerdictOutcome outcome) {
  switch (outcome) {
    case VerdictOutcome::proceed:
      return "proceed";
    case VerdictOutcome::delay:
      return "delay";
    case VerdictOutcome::replan_or_abort:
      return "replan_or_abort";
  }
  return "unknown";
}

}  // namespace colearn
