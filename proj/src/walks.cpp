#include "nest/walks.hpp"

namespace nest {

int64_t SearchWalk::cell_count() const {
  int64_t n = 0;
  for (const Segment& s : segments) n += int64_t(s.cells.size());
  if (!segments.empty()) n -= int64_t(segments.size()) - 1;  // shared junctions
  return n;
}

BreakPointRec do_switch(World& w, Side free_side) {
  if (free_side == Side::Both) throw controller_error("do_switch: no designated free side");
  Cell at = w.position();
  Cell f = step(at, side_dir(w.facing(), other_side(free_side)));
  Cell e = step(at, side_dir(w.facing(), free_side));
  if (!w.is_full(f) || w.is_full(e))
    throw controller_error("do_switch: not a break point at " + cell_str(at));
  if (w.heavy()) {
    w.place(e);
    w.bring(f);
  } else {
    w.bring(f);
    w.place(e);
  }
  return {at, f, e};
}

namespace {

struct Engine {
  World& w;
  const TraversalOptions& opt;
  WalkOutcome out;
  Side cur_side;
  Segment cur;

  Engine(World& world, const TraversalOptions& o) : w(world), opt(o), cur_side(o.first_side) {
    cur.side = cur_side;
    cur.cells.push_back(w.position());
  }

  bool stop_rule_holds() {
    if (opt.stop == StopRule::NearMarker) {
      auto m = w.marker();
      if (!m) throw controller_error("marker stop rule without a marker");
      if (opt.stop_at) return w.position() == *opt.stop_at;
      return manhattan(w.position(), *m) <= kMarkerStopDistance;
    }
    if (w.sensed_full_front()) return false;
    if (cur_side == Side::Both)
      return !w.sensed_full_rel(Side::Left) && !w.sensed_full_rel(Side::Right);
    return !w.sensed_full_rel(cur_side);
  }

  // Returns the side whose cell is full, if the segment ends here.
  // For a Both segment the left side is examined first.
  std::optional<Side> turn_side() {
    if (cur_side == Side::Both) {
      if (w.sensed_full_rel(Side::Left)) return Side::Left;
      if (w.sensed_full_rel(Side::Right)) return Side::Right;
      return std::nullopt;
    }
    if (w.sensed_full_rel(cur_side)) return cur_side;
    return std::nullopt;
  }

  void finish_segment(bool terminal) {
    cur.terminal = terminal;
    out.walk.segments.push_back(cur);
    out.memo.prev_len_is_2 = out.memo.last_len_is_2;
    out.memo.has_prev = out.walk.segments.size() >= 2;
    out.memo.last_len_is_2 = cur.cells.size() == 2;
    out.memo.last_side = cur.side;
    out.memo.more_than_two = out.walk.segments.size() > 2;
  }

  // Arrival checks at the current cell. Returns true when the walk is done.
  bool arrival(bool allow_break_point) {
    w.charge_sense();
    if (stop_rule_holds()) {
      finish_segment(true);
      return true;
    }
    if (auto ts = turn_side()) {
      if (cur_side == Side::Both) {
        // First segment: the full side fixes the walk orientation.
        out.walk.orientation = *ts;
        cur.side = *ts;
      }
      finish_segment(false);
      w.turn(*ts == Side::Left ? Turn::Left : Turn::Right);
      cur = Segment{};
      cur_side = other_side(*ts);
      cur.side = cur_side;
      cur.cells.push_back(w.position());
      return opt.single_segment;
    }
    if (allow_break_point && cur_side != Side::Both &&
        w.sensed_full_rel(other_side(cur_side))) {
      if (opt.do_switches) {
        out.walk.break_points.push_back(do_switch(w, cur_side));
        w.note("switch", cell_str(out.walk.break_points.back().from) + "->" +
                             cell_str(out.walk.break_points.back().to));
      }
    }
    return false;
  }

  WalkOutcome run() {
    if (opt.check_start) {
      if (arrival(true)) return finalize();
    }
    while (true) {
      if (!w.sensed_full_front())
        throw controller_error("walk escaped onto an empty cell at " + cell_str(w.position()));
      w.transit(w.facing());
      cur.cells.push_back(w.position());
      if (arrival(true)) return finalize();
    }
  }

  WalkOutcome finalize() {
    for (const Segment& s : out.walk.segments)
      w.note("seg", std::string(1, "LRB"[int(s.side)]) + " len=" +
                        std::to_string(s.cells.size()) + (s.terminal ? " term" : ""));
    return std::move(out);
  }
};

}  // namespace

WalkOutcome run_traversal(World& w, const TraversalOptions& opt) {
  Engine e(w, opt);
  return e.run();
}

Segment traverse_segment(World& w, Side free_side, StopRule stop) {
  TraversalOptions opt;
  opt.first_side = free_side;
  opt.stop = stop;
  opt.do_switches = false;
  opt.single_segment = true;
  WalkOutcome out = run_traversal(w, opt);
  return out.walk.segments.front();
}

WalkOutcome switch_traversal_with_memo(World& w) {
  if (!w.is_full(w.position()))
    throw precondition_error("switch_traversal: robot not on a full cell");
  // One-cell component: the walk is trivial and the robot stays put.
  if (full_neighbor_count(w.field(), w.position()) == 0) {
    WalkOutcome out;
    Segment s;
    s.cells.push_back(w.position());
    s.terminal = true;
    out.walk.segments.push_back(s);
    out.memo.last_side = Side::Both;
    return out;
  }
  if (!w.sensed_full_front())
    throw precondition_error("switch_traversal: no full cell in front");
  TraversalOptions opt;
  opt.first_side = Side::Both;
  opt.stop = StopRule::FreeSides;
  return run_traversal(w, opt);
}

SearchWalk switch_traversal(World& w) { return switch_traversal_with_memo(w).walk; }

ShiftRecord shifting(World& w, Side last_side) {
  if (last_side == Side::Both)
    throw precondition_error("shifting: terminal first segment ends at a leaf");
  // Drop side: the unwatched side of the last segment, which after the
  // about-turn is on the same relative side as the segment's label.
  Side drop_rel = last_side;
  if (!w.sensed_full_rel(other_side(drop_rel)))
    throw precondition_error("shifting: robot is at a leaf");
  w.turn(Turn::Left);
  w.turn(Turn::Left);
  ShiftRecord rec;
  while (true) {
    rec.emptied.push_back(w.position());
    w.move(w.facing(), 'e', 'h');  // pick and step back along the segment
    w.charge_sense();
    // Complete at the first cell with a full perpendicular neighbor; the
    // switch-placed bricks and the previous segment both register here.
    if (w.sensed_full_rel(Side::Left) || w.sensed_full_rel(Side::Right)) {
      rec.end_cell = w.position();
      rec.carried = true;
      w.note("shift", "picked=" + std::to_string(rec.emptied.size()) +
                          " dropped=" + std::to_string(rec.filled.size()));
      return rec;
    }
    Cell dropc = step(w.position(), side_dir(w.facing(), drop_rel));
    w.place(dropc);
    rec.filled.push_back(dropc);
  }
}

SearchWalk reversal(const SearchWalk& walk) {
  SearchWalk rev;
  rev.break_points = walk.break_points;
  for (auto it = walk.segments.rbegin(); it != walk.segments.rend(); ++it) {
    Segment s = *it;
    std::reverse(s.cells.begin(), s.cells.end());
    rev.segments.push_back(std::move(s));
  }
  rev.orientation = walk.segments.back().side;
  return rev;
}

WalkOutcome return_switch_traversal(World& w, const TraversalOptions& opt) {
  TraversalOptions o = opt;
  o.stop = StopRule::NearMarker;
  return run_traversal(w, o);
}

}  // namespace nest
