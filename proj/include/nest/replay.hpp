#pragma once

#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "nest/field.hpp"
#include "nest/instances.hpp"
#include "nest/trace.hpp"

namespace nest {

// Replays a trace line by line, re-validating every move against the
// pick/drop legality table and the brick count. Deliberately independent of
// the World engine: it keeps its own field and its own legality rules.
struct ReplayState {
  Field field;
  Cell robot;
  bool carrying = false;
  int64_t moves = 0;
  int64_t bricks = 0;
  std::optional<Cell> marker;
  std::optional<Cell> disc_center;
  std::vector<Cell> disc_cells;
};

struct ReplayIssue {
  uint64_t index = 0;
  std::string message;
};

struct ReplayResult {
  bool ok = false;
  uint64_t events = 0;
  std::vector<ReplayIssue> issues;
  ReplayState final_state;
};

// `expected_initial`, when given, is cross-checked against the trace's own
// init notes. `on_event` (optional) fires after each applied event.
ReplayResult replay_trace(
    std::istream& in, const InstanceSpec* expected_initial = nullptr,
    const std::function<void(const TraceEvent&, const ReplayState&)>& on_event = nullptr);

}  // namespace nest
