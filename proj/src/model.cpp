#include "colearn/model.hpp"

#include <algorithm>
#include <cmath>

namespace colearn {

AuxiliaryValues compute_auxiliaries(const StockState& state,
                                    const ExogenousInputs& inputs,
                                    const RateParameters& params,
                                    GuardState guard,
                                    const SafetyPolicy& policy) {
  AuxiliaryValues aux;
  aux.f_ha = inputs.explanation_quality * state.a;
  aux.f_ah = inputs.annotation_quality * state.h;
  aux.f_sync = 0.5 * (aux.f_ha + aux.f_ah);
  aux.delta_obs = inputs.sigma_env * (1.0 - state.s);
  aux.opacity = 1.0 - inputs.explanation_quality;
  aux.pg = params.pg_mode == PgMode::expectation_weighted
               ? state.a - state.t * state.h
               : state.a - state.h;
  aux.oversight_load = params.theta3 * std::max(0.0, state.u - params.u_ref);
  aux.tr_eff =
      inputs.task_rate * (guard.b3_active ? policy.rho_suppress : 1.0);
  return aux;
}

double raw_authority_rate(const StockState& state,
                          const ExogenousInputs& inputs,
                          const RateParameters& params) {
  return params.k1 * state.t + params.k2 * state.s -
         params.k3 * inputs.sigma_env;
}

StockDerivatives derivatives(const StockState& state,
                             const AuxiliaryValues& aux,
                             const ExogenousInputs& inputs,
                             const RateParameters& params,
                             GuardState guard,
                             const SafetyPolicy& policy) {
  StockDerivatives d;
  d.dh = params.alpha1 * aux.f_ha - params.beta1 * state.c;
  d.da = params.alpha2 * aux.f_ah + params.alpha3 * state.u * (1.0 - state.a) -
         params.beta2 * inputs.sigma_env;
  d.ds = params.gamma1 * aux.f_sync - params.gamma2 * aux.delta_obs;
  d.dt_trust = params.delta1 * aux.pg - params.delta2 * aux.opacity;

  double du_raw = raw_authority_rate(state, inputs, params);
  if (guard.b3_active) {
    du_raw = std::min(du_raw, -policy.r_safe);
  }
  d.du = std::clamp(du_raw, -params.u_slew, params.u_slew);

  d.dc = params.theta1 * aux.tr_eff - params.theta2 * (1.0 - state.u) +
         aux.oversight_load;
  return d;
}

GuardState update_guard(const StockState& state, GuardState guard,
                        const SafetyPolicy& policy) {
  if (!guard.b3_active && state.c > policy.c_safe) {
    return GuardState{true};
  }
  if (guard.b3_active && state.c < policy.c_safe - policy.hysteresis) {
    return GuardState{false};
  }
  return guard;
}

StockState clamp_state(const StockState& state, ClampFlags* flags) {
  auto clamp_one = [](double v, bool& flag) {
    const double clamped = std::clamp(v, 0.0, 1.0);
    flag = clamped != v;
    return clamped;
  };
  StockState out;
  ClampFlags f;
  out.h = clamp_one(state.h, f.h);
  out.a = clamp_one(state.a, f.a);
  out.s = clamp_one(state.s, f.s);
  out.t = clamp_one(state.t, f.t);
  out.u = clamp_one(state.u, f.u);
  out.c = clamp_one(state.c, f.c);
  if (flags != nullptr) {
    *flags = f;
  }
  return out;
}

ValidationResult validate_parameters(const RateParameters& params,
                                     const SafetyPolicy& policy) {
  ValidationResult result;

  // Negated comparisons so NaN gains are reported as violations too.
  const struct {
    const char* name;
    double value;
  } gains[] = {
      {"alpha1", params.alpha1}, {"beta1", params.beta1},
      {"alpha2", params.alpha2}, {"alpha3", params.alpha3},
      {"beta2", params.beta2},   {"gamma1", params.gamma1},
      {"gamma2", params.gamma2}, {"delta1", params.delta1},
      {"delta2", params.delta2}, {"k1", params.k1},
      {"k2", params.k2},         {"k3", params.k3},
      {"theta1", params.theta1}, {"theta2", params.theta2},
      {"theta3", params.theta3},
  };
  for (const auto& g : gains) {
    if (!(g.value >= 0.0)) {
      result.violations.push_back(std::string(g.name) + " must be >= 0");
    }
  }
  if (!(params.u_ref >= 0.0 && params.u_ref <= 1.0)) {
    result.violations.emplace_back("u_ref must be in [0,1]");
  }
  if (!(params.u_slew > 0.0)) {
    result.violations.emplace_back("u_slew must be > 0");
  }
  if (!(policy.c_safe > 0.0 && policy.c_safe <= 1.0)) {
    result.violations.emplace_back("c_safe must be in (0,1]");
  }
  if (!(policy.hysteresis > 0.0 && policy.hysteresis < policy.c_safe)) {
    result.violations.emplace_back(
        "hysteresis must satisfy 0 < hysteresis < c_safe");
  }
  if (!(policy.r_safe > 0.0)) {
    result.violations.emplace_back("r_safe must be > 0");
  }
  if (!(policy.rho_suppress >= 0.0 && policy.rho_suppress < 1.0)) {
    result.violations.emplace_back("rho_suppress must be in [0,1)");
  }
  return result;
}

}  // namespace colearn
