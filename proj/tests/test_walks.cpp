#include <doctest.h>

#include <set>

#include "nest/instances.hpp"
#include "nest/walks.hpp"

using namespace nest;

namespace {

// The staircase fixture embedded as a free component: the walk starts at
// (0,0) facing North with the marker four cells South.
World staircase_world() {
  InstanceSpec spec = fixture("fig2-staircase");
  Field f = spec.field;
  Cell marker{0, -4};
  f.add(marker);
  World w(f, {0, 0});
  w.set_marker(marker);
  return w;
}

const std::vector<std::vector<Cell>> kExpectedSegments = {
    {{0, 0}, {0, 1}, {0, 2}},
    {{0, 2}, {-1, 2}, {-2, 2}, {-3, 2}, {-4, 2}, {-5, 2}},
    {{-5, 2}, {-5, 3}, {-5, 4}},
    {{-5, 4}, {-6, 4}},
    {{-6, 4}, {-6, 5}},
    {{-6, 5}, {-7, 5}, {-8, 5}, {-9, 5}, {-10, 5}, {-11, 5}, {-12, 5}, {-13, 5}, {-14, 5}},
};

}  // namespace

TEST_CASE("traverse_segment on a line ends at the far leaf") {
  std::vector<Cell> cells;
  for (int x = 0; x < 6; ++x) cells.push_back({x, 0});
  World w(Field(cells), {0, 0});
  w.face(Dir::East);
  Segment s = traverse_segment(w, Side::Left, StopRule::FreeSides);
  CHECK(s.terminal);
  REQUIRE(s.cells.size() == 6);
  CHECK(s.cells.back() == Cell{5, 0});
  CHECK(w.position() == Cell{5, 0});
}

TEST_CASE("traverse_segment finds the first segment of the staircase") {
  World w = staircase_world();
  Segment s = traverse_segment(w, Side::Left, StopRule::FreeSides);
  CHECK_FALSE(s.terminal);
  CHECK(s.cells == kExpectedSegments[0]);
}

TEST_CASE("traverse_segment with the marker stop rule backtracks to the start") {
  World w = staircase_world();
  // Put the robot three cells up the first segment, facing South.
  World v = w;
  v.walk_to({0, 2});
  v.face(Dir::South);
  Segment s = traverse_segment(v, Side::Left, StopRule::NearMarker);
  CHECK(s.terminal);
  CHECK(s.cells.back() == Cell{0, 0});  // distance 4 from the marker
}

TEST_CASE("do_switch moves the side brick across") {
  // Row with a brick below the middle cell.
  World w(Field({{0, 0}, {1, 0}, {2, 0}, {1, -1}}), {1, 0});
  w.face(Dir::East);  // left = North (empty), right = South (full)
  auto rec = do_switch(w, Side::Left);
  CHECK(rec.at == Cell{1, 0});
  CHECK(rec.from == Cell{1, -1});
  CHECK(rec.to == Cell{1, 1});
  CHECK_FALSE(w.field().contains({1, -1}));
  CHECK(w.field().contains({1, 1}));
  CHECK(w.position() == Cell{1, 0});
  CHECK_FALSE(w.heavy());
  CHECK(w.steps() == 4);
}

TEST_CASE("do_switch while carrying places first and ends carrying") {
  World w(Field({{0, 0}, {1, 0}, {2, 0}, {1, -1}, {0, 1}}), {0, 0});
  w.bring({0, 1});
  REQUIRE(w.heavy());
  w.walk_to({1, 0});
  w.face(Dir::East);
  auto rec = do_switch(w, Side::Left);
  CHECK(rec.from == Cell{1, -1});
  CHECK(w.heavy());
  CHECK(w.field().contains({1, 1}));
  CHECK_FALSE(w.field().contains({1, -1}));
}

TEST_CASE("do_switch rejects non break points") {
  // At the first cell of a walk both sides are empty.
  World w(Field({{0, 0}, {0, 1}, {0, 2}}), {0, 0});
  CHECK_THROWS_AS(do_switch(w, Side::Left), controller_error);
  // At a junction the watched side is full, so there is nothing to place.
  World v(Field({{0, 0}, {0, 1}, {1, 1}, {0, 2}}), {0, 1});
  v.face(Dir::North);  // right = East is full, left = West empty
  CHECK_THROWS_AS(do_switch(v, Side::Right), controller_error);
}

TEST_CASE("switch_traversal of a singleton component is trivial") {
  World w(Field({{0, 0}}), {0, 0});
  SearchWalk walk = switch_traversal(w);
  REQUIRE(walk.segments.size() == 1);
  CHECK(walk.segments[0].cells == std::vector<Cell>{{0, 0}});
  CHECK(walk.cell_count() == 1);
  CHECK(w.position() == Cell{0, 0});
  CHECK(w.steps() == 0);
}

TEST_CASE("switch_traversal of the staircase") {
  World w = staircase_world();
  SearchWalk walk = switch_traversal(w);

  REQUIRE(walk.segments.size() == 6);
  CHECK(walk.orientation == Side::Left);
  const Side want_sides[6] = {Side::Left,  Side::Right, Side::Left,
                              Side::Right, Side::Left,  Side::Right};
  for (int i = 0; i < 6; ++i) {
    CHECK(walk.segments[i].cells == kExpectedSegments[i]);
    CHECK(walk.segments[i].side == want_sides[i]);
    CHECK(walk.segments[i].terminal == (i == 5));
  }

  REQUIRE(walk.break_points.size() == 6);
  const BreakPointRec want[6] = {
      {{-3, 2}, {-3, 1}, {-3, 3}},   {{-4, 2}, {-4, 1}, {-4, 3}},
      {{-5, 3}, {-4, 3}, {-6, 3}},   {{-7, 5}, {-7, 4}, {-7, 6}},
      {{-9, 5}, {-9, 4}, {-9, 6}},   {{-10, 5}, {-10, 4}, {-10, 6}},
  };
  for (int i = 0; i < 6; ++i) {
    CHECK(walk.break_points[i].at == want[i].at);
    CHECK(walk.break_points[i].from == want[i].from);
    CHECK(walk.break_points[i].to == want[i].to);
  }

  CHECK(w.position() == Cell{-14, 5});
  CHECK(w.facing() == Dir::West);
  CHECK_FALSE(w.heavy());
}

TEST_CASE("shifting on the staircase stops at the switch landmark") {
  World w = staircase_world();
  SearchWalk walk = switch_traversal(w);
  ShiftRecord rec = shifting(w, walk.segments.back().side);
  CHECK(rec.carried);
  CHECK(rec.end_cell == Cell{-10, 5});
  CHECK(rec.emptied ==
        std::vector<Cell>{{-14, 5}, {-13, 5}, {-12, 5}, {-11, 5}});
  CHECK(rec.filled == std::vector<Cell>{{-13, 4}, {-12, 4}, {-11, 4}});
  CHECK(w.heavy());
  CHECK(w.position() == Cell{-10, 5});
  // the drop-side neighbor is empty: the shift did not reach the segment head
  CHECK_FALSE(w.is_full({-10, 4}));
}

TEST_CASE("shifting at a leaf is rejected") {
  std::vector<Cell> cells;
  for (int x = 0; x < 4; ++x) cells.push_back({x, 0});
  World w(Field(cells), {0, 0});
  w.face(Dir::East);
  SearchWalk walk = switch_traversal(w);
  CHECK(walk.segments.back().terminal);
  CHECK_THROWS_AS(shifting(w, Side::Left), precondition_error);
}

TEST_CASE("reversal") {
  World w = staircase_world();
  SearchWalk walk = switch_traversal(w);
  SearchWalk rev = reversal(walk);
  CHECK(rev.orientation == Side::Right);  // last forward segment was right-free
  REQUIRE(rev.segments.size() == 6);
  for (int i = 0; i < 6; ++i) {
    std::vector<Cell> cells = kExpectedSegments[5 - i];
    std::reverse(cells.begin(), cells.end());
    CHECK(rev.segments[i].cells == cells);
  }
  // reversing twice restores the cell sequence
  SearchWalk twice = reversal(rev);
  for (int i = 0; i < 6; ++i) CHECK(twice.segments[i].cells == walk.segments[i].cells);
}

TEST_CASE("return traversal restores the staircase component") {
  World w = staircase_world();
  int64_t comps_before = int64_t(components(w.field()).size());
  WalkOutcome wo = switch_traversal_with_memo(w);
  ShiftRecord rec = shifting(w, wo.memo.last_side);
  REQUIRE(rec.end_cell == Cell{-10, 5});

  TraversalOptions o;
  o.stop = StopRule::NearMarker;
  o.first_side = wo.memo.last_side;  // right-free backward, same as forward
  o.check_start = true;
  return_switch_traversal(w, o);

  CHECK(w.position() == Cell{0, 0});  // distance 4 from the marker
  CHECK(w.heavy());

  // One brick was consumed; everything else hangs together again.
  std::set<std::pair<int, int>> want;
  auto add = [&](Cell c) { want.insert({c.x, c.y}); };
  for (int i = 0; i < 6; ++i)
    for (Cell c : kExpectedSegments[i])
      if (c.y != 5 || c.x >= -10) add(c);      // walk cells up to the shift end
  for (Cell c : {Cell{-3, 1}, Cell{-4, 1}, Cell{-7, 4}, Cell{-9, 4}, Cell{-10, 4}})
    add(c);                                     // switch sources restored
  for (Cell c : {Cell{-14, 4}, Cell{-13, 4}, Cell{-12, 4}, Cell{-11, 4}})
    add(c);                                     // the shifted row and its anchor
  add({0, -4});                                 // marker

  std::set<std::pair<int, int>> got;
  for (Cell c : w.field()) got.insert({c.x, c.y});
  CHECK(got == want);

  CHECK(int64_t(components(w.field()).size()) == comps_before);
}
