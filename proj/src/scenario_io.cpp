#include "colearn/scenario_io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace colearn {

namespace {

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) {
    throw std::runtime_error("failed to format number");
  }
  return std::string(buf, ptr);
}

double parse_double(std::string_view text, int line) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ScenarioError("expected a number, got '" + std::string(text) + "'",
                        line);
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario scenario;  // documented defaults
  std::string section;
  Schedule* active_schedule = nullptr;
  bool schedule_cleared = false;

  std::istringstream stream{std::string(text)};
  std::string raw_line;
  int line_no = 0;
  while (std::getline(stream, raw_line)) {
    ++line_no;
    std::string_view line = trim(raw_line);
    if (line.empty() || line.front() == '#') {
      continue;
    }

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ScenarioError("unterminated section header", line_no);
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      active_schedule = nullptr;
      schedule_cleared = false;
      if (section.starts_with("schedule ")) {
        const std::string name = section.substr(9);
        if (name == "sigma_env") {
          active_schedule = &scenario.schedules.sigma_env;
        } else if (name == "explanation_quality") {
          active_schedule = &scenario.schedules.explanation_quality;
        } else if (name == "annotation_quality") {
          active_schedule = &scenario.schedules.annotation_quality;
        } else if (name == "task_rate") {
          active_schedule = &scenario.schedules.task_rate;
        } else {
          throw ScenarioError("unknown schedule '" + name + "'", line_no);
        }
      } else if (section != "initial" && section != "rates" &&
                 section != "safety" && section != "proportionality" &&
                 section != "dq_weights" && section != "solver") {
        throw ScenarioError("unknown section '" + section + "'", line_no);
      }
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ScenarioError("expected 'key = value'", line_no);
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string value{trim(line.substr(eq + 1))};
    if (key.empty()) {
      throw ScenarioError("empty key", line_no);
    }

    if (active_schedule != nullptr) {
      // Schedule sections map start times to values; the presence of any
      // entry replaces the default segments entirely.
      if (!schedule_cleared) {
        active_schedule->segments.clear();
        schedule_cleared = true;
      }
      active_schedule->segments.push_back(ScheduleSegment{
          parse_double(key, line_no), parse_double(value, line_no)});
      continue;
    }

    if (section.empty()) {
      if (key == "label") {
        scenario.label = value;
        continue;
      }
      throw ScenarioError("unknown top-level key '" + key + "'", line_no);
    }

    const std::string path = section + "." + key;
    if (path == "rates.pg_mode" || path == "solver.method") {
      try {
        set_parameter_text(scenario, path, value);
      } catch (const ScenarioError& e) {
        throw ScenarioError(e.what(), line_no);
      }
      continue;
    }
    try {
      set_parameter(scenario, path, parse_double(value, line_no));
    } catch (const ScenarioError&) {
      throw ScenarioError("unknown key '" + key + "' in section '" + section +
                              "'",
                          line_no);
    }
  }

  const ValidationResult check = validate_scenario(scenario);
  if (!check.ok()) {
    std::string message = "invalid scenario: ";
    for (std::size_t i = 0; i < check.violations.size(); ++i) {
      if (i > 0) {
        message += "; ";
      }
      message += check.violations[i];
    }
    throw ScenarioError(message);
  }
  return scenario;
}

std::string write_scenario(const Scenario& sc) {
  std::string out;
  out.reserve(1500);
  auto field = [&out](const char* key, double value) {
    out += key;
    out += " = ";
    out += format_double(value);
    out += '\n';
  };
  auto schedule = [&out](const char* name, const Schedule& sched) {
    out += "\n[schedule ";
    out += name;
    out += "]\n";
    for (const auto& seg : sched.segments) {
      out += format_double(seg.start_time);
      out += " = ";
      out += format_double(seg.value);
      out += '\n';
    }
  };

  out += "# co-learning scenario\n";
  out += "label = " + sc.label + "\n";

  out += "\n[initial]\n";
  field("h", sc.initial.h);
  field("a", sc.initial.a);
  field("s", sc.initial.s);
  field("t", sc.initial.t);
  field("u", sc.initial.u);
  field("c", sc.initial.c);

  out += "\n[rates]\n";
  field("alpha1", sc.rates.alpha1);
  field("beta1", sc.rates.beta1);
  field("alpha2", sc.rates.alpha2);
  field("alpha3", sc.rates.alpha3);
  field("beta2", sc.rates.beta2);
  field("gamma1", sc.rates.gamma1);
  field("gamma2", sc.rates.gamma2);
  field("delta1", sc.rates.delta1);
  field("delta2", sc.rates.delta2);
  field("k1", sc.rates.k1);
  field("k2", sc.rates.k2);
  field("k3", sc.rates.k3);
  field("theta1", sc.rates.theta1);
  field("theta2", sc.rates.theta2);
  field("theta3", sc.rates.theta3);
  field("u_ref", sc.rates.u_ref);
  field("u_slew", sc.rates.u_slew);
  out += "pg_mode = ";
  out += sc.rates.pg_mode == PgMode::expectation_weighted
             ? "expectation-weighted"
             : "literal";
  out += '\n';

  out += "\n[safety]\n";
  field("c_safe", sc.safety.c_safe);
  field("hysteresis", sc.safety.hysteresis);
  field("r_safe", sc.safety.r_safe);
  field("rho_suppress", sc.safety.rho_suppress);

  out += "\n[proportionality]\n";
  field("w_u", sc.proportionality.w_u);
  field("w_as", sc.proportionality.w_as);
  field("c0", sc.proportionality.c0);
  field("c_u", sc.proportionality.c_u);
  field("legal_threshold", sc.proportionality.legal_threshold);

  out += "\n[dq_weights]\n";
  field("w_h", sc.dq_weights.w_h);
  field("w_a", sc.dq_weights.w_a);
  field("w_s", sc.dq_weights.w_s);
  field("w_c", sc.dq_weights.w_c);

  out += "\n[solver]\n";
  out += "method = ";
  out += sc.solver.method == SolverMethod::rk4 ? "rk4" : "euler";
  out += '\n';
  field("dt", sc.solver.dt);
  field("horizon", sc.solver.horizon);

  schedule("sigma_env", sc.schedules.sigma_env);
  schedule("explanation_quality", sc.schedules.explanation_quality);
  schedule("annotation_quality", sc.schedules.annotation_quality);
  schedule("task_rate", sc.schedules.task_rate);
  return out;
}

std::string write_trajectory_csv(const Trajectory& trajectory,
                                 const ProportionalityTrace& trace,
                                 const std::vector<double>& dq_series) {
  const std::size_t n = trajectory.size();
  if (trace.score.size() != n || dq_series.size() != n) {
    throw std::invalid_argument(
        "trajectory, trace, and dq series must be aligned");
  }

  std::string out;
  out.reserve(n * 240 + 128);
  out +=
      "time,H,A,S,T,U,C,F_HA,F_AH,F_sync,delta_obs,PG,opacity,TR_eff,guard,"
      "MA,CD,score,DQ\n";

  char buf[32];
  auto append = [&out, &buf](double v, char sep) {
    const int len = std::snprintf(buf, sizeof(buf), "%.9f", v);
    out.append(buf, static_cast<std::size_t>(len));
    out += sep;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const StockState& s = trajectory.states[i];
    const AuxiliaryValues& a = trajectory.aux[i];
    append(trajectory.times[i], ',');
    append(s.h, ',');
    append(s.a, ',');
    append(s.s, ',');
    append(s.t, ',');
    append(s.u, ',');
    append(s.c, ',');
    append(a.f_ha, ',');
    append(a.f_ah, ',');
    append(a.f_sync, ',');
    append(a.delta_obs, ',');
    append(a.pg, ',');
    append(a.opacity, ',');
    append(a.tr_eff, ',');
    out += trajectory.guards[i].b3_active ? '1' : '0';
    out += ',';
    append(trace.ma[i], ',');
    append(trace.cd[i], ',');
    append(trace.score[i], ',');
    append(dq_series[i], '\n');
  }
  return out;
}

}  // namespace colearn
