#include <doctest.h>

#include <sstream>

#include "nest/world.hpp"

using namespace nest;

namespace {

World line_world(int n, Cell start) {
  std::vector<Cell> cells;
  for (int x = 0; x < n; ++x) cells.push_back({x, 0});
  return World(Field(cells), start);
}

}  // namespace

TEST_CASE("observe reports the radius-8 window") {
  World w(Field({{0, 0}}), {0, 0});
  auto obs = w.observe();
  REQUIRE(obs.full_cells.size() == 1);
  CHECK(obs.full_cells[0].offset == Cell{0, 0});

  World far(Field({{0, 0}, {0, 9}, {0, 1}}), {0, 0});
  auto obs2 = far.observe();
  CHECK(obs2.full_cells.size() == 2);  // (0,9) is outside the window
  for (const auto& s : obs2.full_cells) CHECK(s.offset != Cell{0, 9});
}

TEST_CASE("observe flags marker and disc cells") {
  World w(Field({{0, 0}, {0, 2}, {3, 0}}), {0, 0});
  w.set_marker({0, 2});
  w.seed_disc({3, 0});
  auto obs = w.observe();
  CHECK(obs.marker_visible);
  CHECK(obs.disc_visible);
  int flagged = 0;
  for (const auto& s : obs.full_cells) flagged += int(s.marker) + int(s.disc);
  CHECK(flagged == 2);
}

TEST_CASE("move legality table") {
  // light on a full cell: pass through or pick
  {
    World w = line_world(3, {0, 0});
    w.move(Dir::East, 'f', 'l');
    CHECK(w.position() == Cell{1, 0});
    CHECK(w.field().contains({0, 0}));
    CHECK_FALSE(w.heavy());
  }
  {
    World w = line_world(3, {0, 0});
    w.move(Dir::North, 'e', 'h');  // pick and step off
    CHECK_FALSE(w.field().contains({0, 0}));
    CHECK(w.heavy());
    CHECK(w.steps() == 1);
  }
  // heavy on an empty cell: keep carrying or drop
  {
    World w = line_world(3, {0, 0});
    w.move(Dir::North, 'e', 'h');
    w.move(Dir::North, 'e', 'h');
    CHECK(w.heavy());
    w.move(Dir::South, 'f', 'l');  // drop at (0,2)
    CHECK(w.field().contains({0, 2}));
    CHECK_FALSE(w.heavy());
  }
  // illegal rows
  {
    World w = line_world(3, {0, 0});
    CHECK_THROWS_AS(w.move(Dir::North, 'f', 'h'), illegal_action);  // (f,l) -> (f,h)
    w.move(Dir::North, 'e', 'h');
    CHECK_THROWS_AS(w.move(Dir::North, 'f', 'h'), illegal_action);  // (e,h) -> (f,h)
    w.move(Dir::South, 'f', 'l');
    // light robot on an empty cell cannot create bricks
    CHECK_THROWS_AS(w.move(Dir::North, 'f', 'l'), illegal_action);
  }
}

TEST_CASE("turns are free and compose") {
  World w = line_world(1, {0, 0});
  CHECK(w.facing() == Dir::North);
  w.turn(Turn::Left);
  CHECK(w.facing() == Dir::West);
  w.turn(Turn::Right);
  w.turn(Turn::Right);
  CHECK(w.facing() == Dir::East);
  w.turn(Turn::Left);
  w.turn(Turn::Left);
  CHECK(w.facing() == Dir::West);
  CHECK(w.steps() == 0);
}

TEST_CASE("orientation follows the last step") {
  World w = line_world(3, {0, 0});
  w.move(Dir::East, 'f', 'l');
  CHECK(w.facing() == Dir::East);
  w.move(Dir::North, 'e', 'h');
  CHECK(w.facing() == Dir::North);
}

TEST_CASE("bring") {
  {
    World w(Field({{0, 0}, {0, 1}}), {0, 0});
    w.bring({0, 1});
    CHECK(w.heavy());
    CHECK_FALSE(w.field().contains({0, 1}));
    CHECK(w.position() == Cell{0, 0});
    CHECK(w.facing() == Dir::North);
    CHECK(w.steps() == 2);
  }
  {
    World w(Field({{0, 0}, {0, 2}}), {0, 0});
    w.bring({0, 2});
    CHECK(w.steps() == 4);
    CHECK(w.position() == Cell{0, 0});
  }
  {
    World w(Field({{0, 0}}), {0, 0});
    CHECK_THROWS_AS(w.bring({0, 1}), precondition_error);  // empty source
  }
  {
    World w(Field({{0, 0}, {0, 1}, {1, 0}}), {0, 0});
    w.bring({0, 1});
    CHECK_THROWS_AS(w.bring({1, 0}), precondition_error);  // already carrying
  }
}

TEST_CASE("place") {
  World w(Field({{0, 0}, {0, 1}}), {0, 0});
  CHECK_THROWS_AS(w.place({1, 0}), precondition_error);  // nothing to place
  w.bring({0, 1});
  w.place({-1, -1});
  CHECK(w.steps() == 2 + 4);  // vertical-first route, there and back
  CHECK(w.field().contains({-1, -1}));
  CHECK_FALSE(w.heavy());
  CHECK(w.position() == Cell{0, 0});

  World v(Field({{0, 0}, {0, 1}, {1, 0}}), {0, 0});
  v.bring({0, 1});
  CHECK_THROWS_AS(v.place({1, 0}), precondition_error);  // occupied target
}

TEST_CASE("bring then place back is the identity on field and pose") {
  World w(Field({{0, 0}, {2, 1}, {0, 1}}), {0, 0});
  Field before = w.field();
  w.bring({2, 1});
  w.place({2, 1});
  CHECK(w.field() == before);
  CHECK(w.position() == Cell{0, 0});
  CHECK(w.facing() == Dir::North);
  CHECK_FALSE(w.heavy());
}

TEST_CASE("direction_away") {
  {
    World w(Field({{0, 0}, {5, 0}}), {5, 0});
    w.seed_disc({0, 0});
    CHECK(w.direction_away() == Dir::East);
  }
  {
    World w(Field({{0, 0}, {3, 3}}), {3, 3});
    w.seed_disc({0, 0});
    CHECK(w.direction_away() == Dir::North);  // North/East tie resolves to North
  }
  {
    World w(Field({{0, 0}, {0, 4}}), {0, 4});
    w.seed_disc({0, 0});
    CHECK(w.direction_away() == Dir::North);
  }
}

TEST_CASE("sensing cost is charged separately") {
  WorldConfig cfg;
  cfg.sensing_cost = 3;
  World w(Field({{0, 0}}), {0, 0}, cfg);
  w.observe();
  w.observe();
  CHECK(w.sensing_steps() == 6);
  CHECK(w.steps() == 0);
}

TEST_CASE("trace hash is deterministic") {
  auto run = [] {
    VectorSink sink;
    World w(Field({{0, 0}, {0, 1}}), {0, 0});
    w.set_sink(&sink);
    w.bring({0, 1});
    w.turn(Turn::Left);
    w.place({0, 1});
    return std::pair<uint64_t, size_t>{w.trace_hash(), sink.lines.size()};
  };
  auto [h1, n1] = run();
  auto [h2, n2] = run();
  CHECK(h1 == h2);
  CHECK(n1 == n2);
  CHECK(n1 == 8);  // 4 moves plus the pose-restoring turns
}

TEST_CASE("event line round trip") {
  TraceEvent ev;
  ev.kind = EventKind::Move;
  ev.index = 42;
  ev.before = {-3, 7};
  ev.dir = Dir::West;
  ev.leave = 'e';
  ev.arrive = 'h';
  TraceEvent back = parse_event(format_event(ev));
  CHECK(back.index == 42);
  CHECK(back.before == Cell{-3, 7});
  CHECK(back.dir == Dir::West);
  CHECK(back.leave == 'e');
  CHECK(back.arrive == 'h');

  TraceEvent note;
  note.kind = EventKind::Note;
  note.index = 7;
  note.before = {1, 2};
  note.tag = "seg";
  note.payload = "L len=3";
  TraceEvent nb = parse_event(format_event(note));
  CHECK(nb.tag == "seg");
  CHECK(nb.payload == "L len=3");
}

TEST_CASE("sensed queries respect the radius") {
  World w(Field({{0, 0}}), {0, 0});
  CHECK_THROWS_AS(w.sensed_full({0, 9}), controller_error);
  CHECK_FALSE(w.sensed_full({0, 8}));
}
