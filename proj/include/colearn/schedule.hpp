#pragma once

#include <vector>

#include "colearn/model.hpp"

namespace colearn {

struct ScheduleSegment {
  double start_time = 0.0;
  double value = 0.0;

  bool operator==(const ScheduleSegment&) const = default;
};

// Piecewise-constant exogenous input. Segment start times are strictly
// increasing and the first one is 0. Left-continuous convention: a segment's
// value applies from exactly its start time onward.
struct Schedule {
  std::vector<ScheduleSegment> segments;

  double value_at(double time) const {
    double value = segments.empty() ? 0.0 : segments.front().value;
    for (const auto& seg : segments) {
      if (seg.start_time <= time) {
        value = seg.value;
      } else {
        break;
      }
    }
    return value;
  }

  static Schedule constant(double value) {
    return Schedule{{ScheduleSegment{0.0, value}}};
  }

  bool operator==(const Schedule&) const = default;
};

struct InputSchedules {
  Schedule sigma_env;
  Schedule explanation_quality;
  Schedule annotation_quality;
  Schedule task_rate;

  ExogenousInputs at(double time) const {
    return ExogenousInputs{
        sigma_env.value_at(time),
        explanation_quality.value_at(time),
        annotation_quality.value_at(time),
        task_rate.value_at(time),
    };
  }

  bool operator==(const InputSchedules&) const = default;
};

}  // namespace colearn
