#pragma once

#include <string>
#include <vector>

namespace colearn {

// The six co-learning stocks. Each is a dimensionless level in [0,1]:
// human expertise, AI competence, shared situation awareness, trust
// calibration, AI authority level, and human cognitive load.
struct StockState {
  double h = 0.0;
  double a = 0.0;
  double s = 0.0;
  double t = 0.0;
  double u = 0.0;
  double c = 0.0;

  bool operator==(const StockState&) const = default;
};

// Exogenous drivers sampled from the scenario schedules at one instant.
struct ExogenousInputs {
  double sigma_env = 0.0;            // environmental uncertainty
  double explanation_quality = 0.0;  // AI -> human channel quality
  double annotation_quality = 0.0;   // human -> AI channel quality
  double task_rate = 0.0;            // nominal TR before suppression

  bool operator==(const ExogenousInputs&) const = default;
};

// How the performance gap PG is formed: against trust-weighted expectation
// (A - T*H) or literally against the human level (A - H).
enum class PgMode { expectation_weighted, literal };

struct RateParameters {
  double alpha1 = 0.30;  // human learning gain on F_HA
  double beta1 = 0.10;   // cognitive-load drag on human learning
  double alpha2 = 0.30;  // AI learning gain on F_AH
  double alpha3 = 0.10;  // delegation-learning gain (reinforcing loop R2)
  double beta2 = 0.15;   // concept-drift decay under volatility
  double gamma1 = 0.40;  // awareness fusion gain
  double gamma2 = 0.30;  // observation-gap drag
  double delta1 = 0.50;  // trust sensitivity to the performance gap
  double delta2 = 0.20;  // trust penalty on opaque explanations
  double k1 = 0.45;      // authority gain on trust
  double k2 = 0.35;      // authority gain on shared awareness
  double k3 = 0.25;      // authority brake on volatility (balancing loop B1)
  double theta1 = 0.30;  // workload conversion of the task rate
  double theta2 = 0.20;  // autonomy off-loading relief
  double theta3 = 0.15;  // supervisory-load gain above u_ref (loop B2)
  double u_ref = 0.5;    // authority level above which oversight load accrues
  double u_slew = 0.9;   // max |dU/dt| per window (accountability delay)
  PgMode pg_mode = PgMode::expectation_weighted;

  bool operator==(const RateParameters&) const = default;
};

// Cognitive-load safety loop (B3) configuration.
struct SafetyPolicy {
  double c_safe = 0.8;        // activation threshold on C
  double hysteresis = 0.05;   // deactivate only below c_safe - hysteresis
  double r_safe = 0.2;        // forced authority-decrease rate while active
  double rho_suppress = 0.5;  // task-rate multiplier while active

  bool operator==(const SafetyPolicy&) const = default;
};

struct GuardState {
  bool b3_active = false;

  bool operator==(const GuardState&) const = default;
};

// Flow terms shared by several stock equations, evaluated at one instant.
struct AuxiliaryValues {
  double f_ha = 0.0;            // AI -> human feedback flow
  double f_ah = 0.0;            // human -> AI feedback flow
  double f_sync = 0.0;          // awareness fusion flow
  double delta_obs = 0.0;       // observation gap
  double pg = 0.0;              // performance gap, in [-1, 1]
  double opacity = 0.0;         // explanation deficit
  double oversight_load = 0.0;  // supervisory term above u_ref
  double tr_eff = 0.0;          // task rate after B3 suppression

  bool operator==(const AuxiliaryValues&) const = default;
};

// Rates of change per unit normalized mission time. du is post guard/slew.
struct StockDerivatives {
  double dh = 0.0;
  double da = 0.0;
  double ds = 0.0;
  double dt_trust = 0.0;
  double du = 0.0;
  double dc = 0.0;

  bool operator==(const StockDerivatives&) const = default;
};

// Which stocks were projected back onto [0,1] by clamp_state.
struct ClampFlags {
  bool h = false;
  bool a = false;
  bool s = false;
  bool t = false;
  bool u = false;
  bool c = false;

  bool any() const { return h || a || s || t || u || c; }
  bool operator==(const ClampFlags&) const = default;
};

struct ValidationResult {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

AuxiliaryValues compute_auxiliaries(const StockState& state,
                                    const ExogenousInputs& inputs,
                                    const RateParameters& params,
                                    GuardState guard,
                                    const SafetyPolicy& policy);

// The six flow equations. `aux` must come from compute_auxiliaries on the
// same (state, inputs, guard). The authority rate is B3-forced and
// slew-limited; the others are unconstrained.
StockDerivatives derivatives(const StockState& state,
                             const AuxiliaryValues& aux,
                             const ExogenousInputs& inputs,
                             const RateParameters& params,
                             GuardState guard,
                             const SafetyPolicy& policy);

// Authority rate before the B3 override and the slew limit:
// k1*T + k2*S - k3*sigma_env. Exposed for loop-polarity diagnostics.
double raw_authority_rate(const StockState& state,
                          const ExogenousInputs& inputs,
                          const RateParameters& params);

// Hysteretic B3 transition: activate above c_safe, deactivate below
// c_safe - hysteresis, hold otherwise.
GuardState update_guard(const StockState& state, GuardState guard,
                        const SafetyPolicy& policy);

// Projects every stock onto [0,1]. If `flags` is non-null it records which
// fields moved.
StockState clamp_state(const StockState& state, ClampFlags* flags = nullptr);

ValidationResult validate_parameters(const RateParameters& params,
                                     const SafetyPolicy& policy);

}  // namespace colearn
