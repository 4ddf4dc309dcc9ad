#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "colearn/integrator.hpp"
#include "colearn/param_path.hpp"
#include "colearn/proportionality.hpp"
#include "colearn/scenario.hpp"

namespace colearn {

// Parses the nested key-value scenario format (see README for the grammar).
// Missing sections keep their documented defaults; unknown sections or keys
// and semantic violations raise ScenarioError with the offending line.
Scenario parse_scenario(std::string_view text);

// Canonical serialization: every field explicit, fixed section and key
// order, shortest float spelling. parse_scenario(write_scenario(s)) == s.
std::string write_scenario(const Scenario& scenario);

// CSV with one row per sample:
// time,H,A,S,T,U,C,F_HA,F_AH,F_sync,delta_obs,PG,opacity,TR_eff,guard,MA,CD,score,DQ
// Numeric fields carry nine decimal places; guard is 0/1.
std::string write_trajectory_csv(const Trajectory& trajectory,
                                 const ProportionalityTrace& trace,
                                 const std::vector<double>& dq_series);

// Static SVG chart: the six stocks on the primary axis, the proportionality
// score on a secondary axis, a legend, and a zero-reference line when the
// score crosses zero.
std::string emit_chart_svg(const Trajectory& trajectory,
                           const ProportionalityTrace& trace);

}  // namespace colearn
