#pragma once

#include <cstdint>
#include <vector>

#include "nest/world.hpp"

namespace nest {

// A maximal straight run of full cells. `side` is the watched (free) side
// during its traversal; the first segment of a fresh walk watches both and
// gets relabeled with the walk orientation once that is decided.
struct Segment {
  std::vector<Cell> cells;
  Side side = Side::Both;
  bool terminal = false;  // ended by the stop rule rather than by a side turn
};

struct BreakPointRec {
  Cell at;    // the cell where the switch happened
  Cell from;  // brick source (non-free side)
  Cell to;    // brick destination (free side)
};

struct SearchWalk {
  std::vector<Segment> segments;
  Side orientation = Side::Both;  // Both = trivial (single-segment or one-cell walk)
  std::vector<BreakPointRec> break_points;

  Cell first_cell() const { return segments.front().cells.front(); }
  Cell last_cell() const { return segments.back().cells.back(); }
  // Number of distinct cells (junctions are stored in both adjacent segments).
  int64_t cell_count() const;
};

// What the finite controller is allowed to remember about the walk: the two
// most recent segment lengths capped at "2 or more than 2", their sides, and
// whether more than two segments exist. The full SearchWalk value is recorded
// for verification only.
struct ControllerMemo {
  Side last_side = Side::Both;
  bool last_len_is_2 = false;
  bool prev_len_is_2 = false;
  bool has_prev = false;       // at least two segments
  bool more_than_two = false;  // l > 2
};

struct ShiftRecord {
  std::vector<Cell> emptied;  // picked cells, in pick order
  std::vector<Cell> filled;   // dropped cells; always one fewer than emptied
  Cell end_cell;
  bool carried = false;
};

enum class StopRule : uint8_t {
  FreeSides,   // stop at empty front with empty watched side(s); terminal
  NearMarker,  // stop on arrival within distance 4 of the marker
};

struct TraversalOptions {
  Side first_side = Side::Both;
  StopRule stop = StopRule::FreeSides;
  bool check_start = false;    // run arrival checks at the starting cell (mid-segment resume)
  bool do_switches = true;
  bool single_segment = false;
  // With the marker stop rule: stop exactly at this cell instead of at the
  // first cell within distance 4 of the marker. The controller knows it as
  // the marker's relative offset from the walk start, which is one of a
  // constant number of values and fits in automaton state. Backtracks that
  // skim the marker's distance ring would otherwise stop too early and leave
  // switches unrestored.
  std::optional<Cell> stop_at;
};

struct WalkOutcome {
  SearchWalk walk;
  ControllerMemo memo;
};

// Core traversal engine. The robot advances from its current pose, watching
// the configured side; at each arrival it checks, in order: the stop rule,
// a full watched-side cell (segment ends there, robot turns onto it), then a
// full cell on the unwatched side (a break point; a switch moves that brick
// across). Junction cells belong to both adjacent segments.
WalkOutcome run_traversal(World& w, const TraversalOptions& opt);

// Single segment, no switches, no turn at the end.
Segment traverse_segment(World& w, Side free_side, StopRule stop);

// Moves the brick lying on the unwatched side of the robot across to the
// watched side (light: bring then place; heavy: place then bring).
// Throws controller_error when the local shape is not a break point.
BreakPointRec do_switch(World& w, Side free_side);

// Full search walk with switches from the robot's current pose.
// Requires a full cell in front unless the component is a single cell.
SearchWalk switch_traversal(World& w);
WalkOutcome switch_traversal_with_memo(World& w);

// Backward brick relay along the last traversed segment. `last_side` is that
// segment's watched side. Ends on the first cell with a full perpendicular
// neighbor, carrying a brick.
ShiftRecord shifting(World& w, Side last_side);

// Segments reversed in order and internally; orientation is the side of the
// last forward segment.
SearchWalk reversal(const SearchWalk& walk);

// Return traversal: same engine with the marker stop rule.
WalkOutcome return_switch_traversal(World& w, const TraversalOptions& opt);

}  // namespace nest
