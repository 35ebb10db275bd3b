#include "nest/procedures.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

namespace nest {

namespace {

constexpr int64_t kClearRadius = 6;  // sweep empties non-marker cells this close to the disc
constexpr int64_t kDropRadius = 7;   // swept bricks land at the first empty cell this far out
constexpr int64_t kLostRadius = 7;   // a component entirely beyond this is lost

Dir dir_toward_adjacent(Cell from, Cell to) {
  if (to == step(from, Dir::North)) return Dir::North;
  if (to == step(from, Dir::East)) return Dir::East;
  if (to == step(from, Dir::South)) return Dir::South;
  if (to == step(from, Dir::West)) return Dir::West;
  throw error("cells not adjacent: " + cell_str(from) + " " + cell_str(to));
}

}  // namespace

InvariantReport check_invariants(const World& w, const std::string& checkpoint) {
  InvariantReport r;
  r.checkpoint = checkpoint;
  if (!w.disc()) return r;
  r.applicable = true;
  const DiscLayout& D = *w.disc();
  auto M = w.marker();

  if (M) {
    for (int d = 0; d < 4; ++d)
      if (w.field().contains(step(*M, Dir(d)))) r.marker_isolated = false;
    if (!r.marker_isolated) r.violations.push_back("marker has a full neighbor");
  }

  int64_t nearest = std::numeric_limits<int64_t>::max();
  bool marker_near_some_component = false;
  for (const auto& comp : components(w.field())) {
    bool is_disc = false, is_marker = false;
    for (Cell c : comp)
      if (distance_to_rough_disc(c, D) == 0) {
        is_disc = true;
        break;
      }
    if (M && comp.size() == 1 && comp[0] == *M) is_marker = true;
    if (is_disc || is_marker) continue;
    int64_t dmin = std::numeric_limits<int64_t>::max();
    int64_t to_marker = std::numeric_limits<int64_t>::max();
    for (Cell c : comp) {
      dmin = std::min(dmin, distance_to_rough_disc(c, D));
      if (M) to_marker = std::min(to_marker, manhattan(c, *M));
    }
    nearest = std::min(nearest, dmin);
    if (dmin > kLostRadius) ++r.lost_components;
    if (M && to_marker == 4) marker_near_some_component = true;
  }
  if (nearest != std::numeric_limits<int64_t>::max()) {
    r.gap_nearest = nearest;
    r.gap = nearest - 1;
  }

  bool f1 = M && distance_to_rough_disc(*M, D) == 3 && marker_near_some_component;
  bool f2 = r.gap_nearest < 0 || r.gap_nearest >= kDropRadius;
  r.structured = f1 && f2;
  r.strongly_structured =
      r.structured && r.lost_components == 0 && M && w.position() == *M;
  return r;
}

void NestRun::fail(const std::string& checkpoint, const std::string& msg) {
  violations_.push_back(checkpoint + ": " + msg);
  w_.note("violation", checkpoint + " " + msg);
}

void NestRun::expect(bool ok, const std::string& checkpoint, const std::string& msg) {
  if (!ok) fail(checkpoint, msg);
}

int64_t NestRun::free_cell_count() const {
  return w_.field().size() - w_.disc()->size - (w_.marker() ? 1 : 0);
}

Cell NestRun::nearest_free_cell() const {
  const DiscLayout& D = *w_.disc();
  Cell M = *w_.marker();
  bool found = false;
  Cell best{};
  int64_t best_d = std::numeric_limits<int64_t>::max();
  for (Cell c : w_.field()) {
    if (c == M || distance_to_rough_disc(c, D) == 0) continue;
    int64_t d = manhattan(c, w_.position());
    if (!found || d < best_d || (d == best_d && cell_before(c, best))) {
      found = true;
      best_d = d;
      best = c;
    }
  }
  if (!found) throw precondition_error("no free component exists");
  return best;
}

std::vector<Cell> NestRun::free_component_of(Cell c) const {
  std::vector<Cell> comp;
  std::unordered_set<Cell, CellHash> seen{c};
  std::vector<Cell> stack{c};
  while (!stack.empty()) {
    Cell cur = stack.back();
    stack.pop_back();
    comp.push_back(cur);
    for (int d = 0; d < 4; ++d) {
      Cell n = step(cur, Dir(d));
      if (w_.field().contains(n) && !seen.count(n)) {
        seen.insert(n);
        stack.push_back(n);
      }
    }
  }
  std::sort(comp.begin(), comp.end(), cell_before);
  return comp;
}

Cell NestRun::next_extension_cell() const {
  const DiscLayout& D = *w_.disc();
  DiscLayout next = rough_disc_cells(D.center, D.size + 1);
  if (!next.prefix.empty()) return next.prefix.back();
  return ring_cells(D.center, D.radius + 1).back();
}

// ---------------------------------------------------------------------------
// Sweep

namespace {

// Full cells close to the disc, visible from the robot's border position.
std::vector<Cell> sweep_candidates(const World& w) {
  const DiscLayout& D = *w.disc();
  Cell M = *w.marker();
  Cell r = w.position();
  std::vector<Cell> out;
  for (int dy = -7; dy <= 7; ++dy) {
    int wdt = 7 - std::abs(dy);
    for (int dx = -wdt; dx <= wdt; ++dx) {
      Cell c{r.x + dx, r.y + dy};
      if (!w.field().contains(c) || c == M) continue;
      int64_t d = distance_to_rough_disc(c, D);
      if (d >= 1 && d <= kClearRadius) out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end(), cell_before);
  return out;
}

}  // namespace

Cell NestRun::choose_marker_site(const std::vector<Cell>& comp) const {
  const DiscLayout& D = *w_.disc();
  Cell M = *w_.marker();
  std::unordered_set<Cell, CellHash> comp_set(comp.begin(), comp.end());
  auto usable = [&](Cell p) { return p == M || !w_.field().contains(p); };
  auto min_dist_to_comp_leq = [&](Cell p, int64_t k) {
    // true when some component cell is within distance k of p
    for (int dy = int(-k); dy <= int(k); ++dy) {
      int wdt = int(k) - std::abs(dy);
      for (int dx = -wdt; dx <= wdt; ++dx)
        if (comp_set.count({p.x + dx, p.y + dy})) return true;
    }
    return false;
  };

  std::vector<Cell> exact;
  for (Cell c : comp) {
    for (int dy = -4; dy <= 4; ++dy) {
      int dx_abs = 4 - std::abs(dy);
      for (int dx : {-dx_abs, dx_abs}) {
        Cell p{c.x + dx, c.y + dy};
        if (!usable(p)) continue;
        if (distance_to_rough_disc(p, D) != 3) continue;
        if (min_dist_to_comp_leq(p, 3)) continue;  // keep the distance exactly 4
        exact.push_back(p);
        if (dx_abs == 0) break;
      }
    }
  }
  if (!exact.empty()) {
    std::sort(exact.begin(), exact.end(), cell_before);
    exact.erase(std::unique(exact.begin(), exact.end()), exact.end());
    return exact.front();
  }
  // Fall back to "within distance 4" before giving up.
  std::vector<Cell> relaxed;
  for (Cell c : comp) {
    for (int dy = -4; dy <= 4; ++dy) {
      int wdt = 4 - std::abs(dy);
      for (int dx = -wdt; dx <= wdt; ++dx) {
        Cell p{c.x + dx, c.y + dy};
        if (!usable(p)) continue;
        if (distance_to_rough_disc(p, D) != 3) continue;
        relaxed.push_back(p);
      }
    }
  }
  if (!relaxed.empty()) {
    std::sort(relaxed.begin(), relaxed.end(), cell_before);
    return relaxed.front();
  }
  throw controller_error("no marker site at distance 3 from the disc and 4 from the component");
}

void NestRun::sweep() {
  const DiscLayout& D = *w_.disc();
  Cell M = *w_.marker();
  long_shift_sweep_walks_ = 0;
  const auto& recent_fills = w_.filled_since_mark();
  std::unordered_set<Cell, CellHash> recent(recent_fills.begin(), recent_fills.end());

  // Walk to the closest disc cell (ties by ≺) and derive the border circuit.
  Cell entry = D.cells.front();
  int64_t entry_d = std::numeric_limits<int64_t>::max();
  for (Cell c : D.cells) {
    int64_t d = manhattan(c, w_.position());
    if (d < entry_d || (d == entry_d && cell_before(c, entry))) {
      entry_d = d;
      entry = c;
    }
  }
  w_.walk_to(entry);

  std::vector<Cell> border =
      D.radius >= 1 ? ring_cells(D.center, D.radius) : std::vector<Cell>{D.center};
  size_t start = 0;
  int64_t best = std::numeric_limits<int64_t>::max();
  for (size_t i = 0; i < border.size(); ++i) {
    int64_t d = manhattan(border[i], entry);
    if (d < best) {
      best = d;
      start = i;
    }
  }

  for (size_t k = 0; k < border.size(); ++k) {
    Cell at = border[(start + k) % border.size()];
    w_.walk_to(at);
    while (true) {
      auto cands = sweep_candidates(w_);
      if (cands.empty()) break;
      Cell c = cands.front();
      w_.walk_to(c);
      // Pick the brick and carry it outward until the first empty cell at
      // drop distance, then drop it on the way back to the border.
      bool recent_fill = recent.count(c) != 0;
      int64_t walk_len = 0;
      Dir dir = w_.direction_away();
      w_.move(dir, 'e', 'h');
      ++walk_len;
      while (w_.is_full(w_.position()) ||
             distance_to_rough_disc(w_.position(), D) < kDropRadius) {
        dir = w_.direction_away();
        w_.transit(dir);
        ++walk_len;
      }
      if (recent_fill && walk_len > 2) ++long_shift_sweep_walks_;
      std::vector<Cell> back = l_route(w_.position(), at);
      for (size_t i = 1; i < back.size(); ++i) {
        Dir d2 = dir_toward_adjacent(w_.position(), back[i]);
        if (i == 1)
          w_.move(d2, 'f', 'l');  // drop
        else
          w_.transit(d2);
      }
    }
  }

  if (opt_.monitors) {
    for (Cell c : w_.field()) {
      if (c == M) continue;
      int64_t d = distance_to_rough_disc(c, *w_.disc());
      expect(d == 0 || d >= kDropRadius, "sweep",
             "cell " + cell_str(c) + " still inside the cleared zone");
    }
    expect(long_shift_sweep_walks_ <= 1, "sweep",
           "more than one long sweep-walk caused by recently placed bricks");
  }

  if (free_cell_count() > 0) {
    // Relocate the marker next to the free component with the ≺-smallest cell.
    Cell seed{};
    bool found = false;
    for (Cell c : w_.field().sorted()) {
      if (c == M || distance_to_rough_disc(c, *w_.disc()) == 0) continue;
      seed = c;
      found = true;
      break;
    }
    if (!found) throw controller_error("free cells counted but none found");
    std::vector<Cell> comp = free_component_of(seed);
    Cell site = choose_marker_site(comp);
    if (site != M) {
      w_.walk_to(M);
      w_.clear_marker();
      carry_from_current(site);
      w_.set_marker(site);
    }
  }
  w_.walk_to(*w_.marker());
  w_.reset_fill_mark();
}

// Robot stands on a full cell (light); moves that brick to `to`.
void NestRun::carry_from_current(Cell to) {
  std::vector<Cell> route = l_route(w_.position(), to);
  Dir first = dir_toward_adjacent(route[0], route[1]);
  w_.move(first, 'e', 'h');
  if (route.size() == 2) {
    w_.move(opposite(first), 'f', 'l');
    return;
  }
  for (size_t i = 2; i + 1 < route.size(); ++i)
    w_.transit(dir_toward_adjacent(route[i - 1], route[i]));
  w_.place(to);
}

// ---------------------------------------------------------------------------
// FindNextBrick

FindOutcome NestRun::find_next_brick() {
  if (free_cell_count() <= 0) throw precondition_error("no free component exists");
  FindOutcome fo;
  Cell target = nearest_free_cell();
  fo.walk_start = target;

  std::vector<Cell> comp;
  std::vector<Cell> other_mins;  // ≺-min cells of the untouched free components
  if (opt_.monitors) {
    comp = free_component_of(target);
    fo.component_size = int64_t(comp.size());
    Field cf(comp);
    fo.component_span = span(cf);
    expect(distance_to_rough_disc(target, *w_.disc()) == kDropRadius, "find",
           "walk start is not at the expected distance from the disc");
    std::unordered_set<Cell, CellHash> in_comp(comp.begin(), comp.end());
    for (const auto& co : components(w_.field())) {
      if (in_comp.count(co.front())) continue;
      bool skip = co.size() == 1 && co[0] == *w_.marker();
      for (Cell c : co)
        if (distance_to_rough_disc(c, *w_.disc()) == 0) skip = true;
      if (!skip) other_mins.push_back(co.front());
    }
  } else {
    fo.component_size = -1;
  }

  w_.walk_to(target);
  if (full_neighbor_count(w_.field(), target) > 0) {
    Cell best{};
    bool found = false;
    for (int d = 0; d < 4; ++d) {
      Cell n = step(target, Dir(d));
      if (!w_.field().contains(n)) continue;
      if (!found || cell_before(n, best)) {
        best = n;
        found = true;
      }
    }
    w_.face(dir_toward_adjacent(target, best));
  }

  fo.wo = switch_traversal_with_memo(w_);

  if (opt_.monitors) {
    expect(fo.wo.walk.cell_count() <= 2 * fo.component_span + 2, "find",
           "search walk longer than twice the component span plus two");
    // Every component the traversal split off must reach back to within two
    // cells of one of its break points (that is where its cut happened).
    for (const auto& co : components(w_.field())) {
      Cell mn = co.front();
      bool known = co.size() == 1 && co[0] == *w_.marker();
      for (Cell c : co) {
        if (distance_to_rough_disc(c, *w_.disc()) == 0) known = true;
        if (c == w_.position()) known = true;  // the walk's own component
      }
      for (Cell m : other_mins)
        if (m == mn) known = true;
      if (known) continue;
      bool near = false;
      for (const auto& bp : fo.wo.walk.break_points)
        for (Cell c : co)
          if (manhattan(c, bp.at) <= 2) near = true;
      expect(near, "find", "split component at " + cell_str(mn) + " far from any break point");
    }
  }

  if (full_neighbor_count(w_.field(), w_.position()) <= 1) {
    // Leaf: lift the brick with a two-move bounce so the next procedure
    // starts with the robot heavy on the emptied cell.
    Dir orig = w_.facing();
    Dir off;
    if (full_neighbor_count(w_.field(), w_.position()) == 1)
      off = opposite(w_.facing());  // the cell behind, part of the walk
    else {
      std::vector<Cell> r = l_route(w_.position(), *w_.marker());
      off = dir_toward_adjacent(r[0], r[1]);
    }
    w_.move(off, 'e', 'h');
    w_.transit(opposite(off));
    w_.face(orig);
    fo.shifted = false;
  } else {
    fo.shift = shifting(w_, fo.wo.memo.last_side);
    fo.shifted = true;
    // The skip branch of the return exists to step over bricks laid down by
    // the shift; it applies only when the shift actually dropped some and
    // ran through the whole last segment (drop-side neighbor full again).
    Cell cp = step(w_.position(), side_dir(w_.facing(), fo.wo.memo.last_side));
    fo.at_first_of_last = !fo.shift.filled.empty() && w_.is_full(cp);
  }

  if (opt_.monitors) {
    expect(w_.heavy(), "find", "robot not carrying a brick after the procedure");
    auto rep = check_invariants(w_, "post-find");
    expect(rep.gap_nearest < 0 || (rep.gap_nearest >= 5 && rep.gap_nearest <= 7), "find",
           "gap out of range after the walk: " + std::to_string(rep.gap_nearest));
    // The robot must sit in the tail of the walk, at or past the last break point.
    const SearchWalk& walk = fo.wo.walk;
    bool in_prefix = false;
    Cell here = w_.position();
    if (walk.break_points.empty()) {
      for (const Segment& s : walk.segments)
        for (Cell c : s.cells)
          if (c == here) in_prefix = true;
    } else {
      Cell b = walk.break_points.back().at;
      bool past = false;
      for (const Segment& s : walk.segments)
        for (Cell c : s.cells) {
          if (c == b) past = true;
          if (past && c == here) in_prefix = true;
        }
    }
    expect(in_prefix, "find", "robot outside the reversal prefix");
  }
  return fo;
}

// ---------------------------------------------------------------------------
// ReturnToMarker

void NestRun::return_to_marker(const FindOutcome& fo) {
  const ControllerMemo& memo = fo.wo.memo;
  bool singleton = fo.wo.walk.cell_count() == 1;
  if (!singleton) {
    TraversalOptions o;
    o.stop = StopRule::NearMarker;
    o.stop_at = fo.walk_start;
    if (fo.shifted && fo.at_first_of_last) {
      // Shifting consumed the whole last segment; the cell across the drop
      // side is the penultimate cell of the previous segment. Skip past the
      // bricks just laid down before resuming, so they are not mistaken for
      // a break point.
      Turn t1 = memo.last_side == Side::Left ? Turn::Left : Turn::Right;
      w_.turn(t1);
      int k = memo.prev_len_is_2 ? 1 : 2;
      for (int i = 0; i < k; ++i) {
        if (!w_.sensed_full_front())
          throw controller_error("return: expected a full cell while skipping");
        w_.transit(w_.facing());
      }
      if (memo.prev_len_is_2 && memo.more_than_two) {
        w_.turn(t1 == Turn::Left ? Turn::Right : Turn::Left);
        o.first_side = memo.last_side;  // two segments back, same watch side
        o.check_start = false;          // standing at a fresh segment head
      } else {
        o.first_side = other_side(memo.last_side);
        o.check_start = true;
      }
    } else {
      if (!fo.shifted) {
        // Leaf pick: about-turn onto the walk.
        w_.turn(Turn::Left);
        w_.turn(Turn::Left);
      }
      o.first_side = memo.last_side;
      o.check_start = true;
    }
    return_switch_traversal(w_, o);
  }
  w_.walk_to(*w_.marker());

  if (opt_.monitors) {
    auto rep = check_invariants(w_, "post-return");
    expect(rep.lost_components == 0, "return", "lost components after the return");
    expect(w_.heavy(), "return", "robot lost its brick on the way back");
    expect(w_.position() == *w_.marker(), "return", "robot not at the marker");
  }
}

// ---------------------------------------------------------------------------
// ExtendRoughDisc

void NestRun::extend_rough_disc() {
  if (!w_.heavy()) throw precondition_error("extend: robot carries no brick");
  Cell M = *w_.marker();
  if (w_.position() != M) throw precondition_error("extend: robot not at the marker");
  Cell e = next_extension_cell();
  std::vector<Cell> route = l_route(M, e);
  int64_t before = w_.steps();
  for (size_t i = 1; i + 1 < route.size(); ++i)
    w_.transit(dir_toward_adjacent(route[i - 1], route[i]));
  w_.place(e);
  w_.grow_disc(e);
  if (opt_.monitors) {
    int64_t walked = w_.steps() - before;
    int64_t bound = 2 * (w_.disc()->radius + 6);
    expect(walked <= 2 * bound + 8, "extend", "extension walk unexpectedly long");
  }
  w_.walk_to(M);
  sweep();
}

// ---------------------------------------------------------------------------
// The whole algorithm

void NestRun::check_head(const std::string& tag) {
  if (!opt_.monitors) return;
  auto rep = check_invariants(w_, tag);
  expect(rep.strongly_structured, tag, "field is not strongly structured");
  expect(rep.marker_isolated, tag, "marker is not isolated");
  for (const auto& v : rep.violations) fail(tag, v);
}

RunStats NestRun::run() {
  RunStats st;
  st.z = w_.field().size();
  st.initial_span = span(w_.field());
  if (components(w_.field()).size() != 1)
    throw precondition_error("initial field is not connected");
  w_.note("run-start", "z=" + std::to_string(st.z) + " s=" + std::to_string(st.initial_span));

  if (st.initial_span <= 2) {
    st.early_exit = true;
    st.nest_ok = is_nest(w_.field());
    st.steps = w_.steps();
    st.sensing_steps = w_.sensing_steps();
    st.violations = int64_t(violations_.size());
    st.final_center = w_.position();
    w_.note("run-end", "early-exit");
    return st;
  }

  w_.set_marker(w_.position());
  Cell seed{};
  bool found = false;
  for (Cell c : w_.field().sorted()) {
    if (manhattan(c, w_.position()) == 2 && (!found || cell_before(c, seed))) {
      seed = c;
      found = true;
    }
  }
  if (!found) throw controller_error("no full cell at distance 2 from the start");
  w_.seed_disc(seed);
  sweep();

  while (free_cell_count() > 0) {
    check_head("loop-head");
    w_.note("iter", std::to_string(st.iterations));
    int64_t comps_before = opt_.monitors ? int64_t(components(w_.field()).size()) : 0;
    FindOutcome fo = find_next_brick();
    return_to_marker(fo);
    if (opt_.monitors) {
      // One brick left the component; a singleton component disappears,
      // anything larger must come out in one piece again.
      int64_t comps_after = int64_t(components(w_.field()).size());
      int64_t expected = comps_before - (fo.component_size == 1 ? 1 : 0);
      expect(comps_after == expected, "return",
             "component count " + std::to_string(comps_after) + ", expected " +
                 std::to_string(expected));
    }
    extend_rough_disc();
    ++st.iterations;
  }

  // Move the marker brick onto the disc; the construction is complete.
  Cell M = *w_.marker();
  if (w_.position() != M) throw controller_error("robot not at the marker for the final brick");
  Cell e = next_extension_cell();
  w_.clear_marker();
  carry_from_current(e);
  w_.grow_disc(e);

  st.steps = w_.steps();
  st.sensing_steps = w_.sensing_steps();
  st.final_center = w_.disc()->center;
  DiscLayout want = rough_disc_cells(w_.disc()->center, st.z);
  bool match = w_.field().size() == st.z;
  for (Cell c : want.cells)
    if (!w_.field().contains(c)) match = false;
  st.nest_ok = match && is_nest(w_.field());
  if (opt_.monitors) {
    expect(match, "final", "final field is not the expected rough disc");
    expect(is_nest(w_.field()), "final", "final field is not a nest");
  }
  st.violations = int64_t(violations_.size());
  w_.note("run-end", std::string("nest=") + (st.nest_ok ? "1" : "0"));
  return st;
}

RunStats build_nest(World& w, const NestOptions& opt) {
  NestRun run(w, opt);
  return run.run();
}

}  // namespace nest
