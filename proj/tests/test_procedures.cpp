#include <doctest.h>

#include <set>

#include "nest/instances.hpp"
#include "nest/procedures.hpp"

using namespace nest;

namespace {

RunStats run_on(const InstanceSpec& spec, bool monitors = true) {
  World w(spec.field, spec.start);
  NestOptions opt;
  opt.monitors = monitors;
  return build_nest(w, opt);
}

std::set<std::pair<int, int>> as_set(const Field& f) {
  std::set<std::pair<int, int>> s;
  for (Cell c : f) s.insert({c.x, c.y});
  return s;
}

}  // namespace

TEST_CASE("span <= 2 exits immediately") {
  RunStats st = run_on(fixture("plus"));
  CHECK(st.early_exit);
  CHECK(st.steps == 0);
  CHECK(st.nest_ok);
  CHECK(st.iterations == 0);
}

TEST_CASE("four-cell line becomes a rough disc of size four") {
  InstanceSpec spec = fixture("line-4");
  World w(spec.field, spec.start);
  RunStats st = build_nest(w, {});
  CHECK_FALSE(st.early_exit);
  CHECK(st.iterations == 2);  // z - 2
  CHECK(st.violations == 0);
  CHECK(st.nest_ok);
  CHECK(span(w.field()) == 2);
  auto want = rough_disc_cells(st.final_center, 4);
  CHECK(as_set(w.field()) == as_set(Field(want.cells)));
}

TEST_CASE("five-cell line walkthrough") {
  InstanceSpec spec = fixture("line-5");
  World w(spec.field, spec.start);
  RunStats st = build_nest(w, {});
  CHECK(st.iterations == 3);
  CHECK(st.violations == 0);
  CHECK(st.nest_ok);
  // The seed sits two cells East of the start, so the nest is the plus at (2,0).
  CHECK(st.final_center == Cell{2, 0});
  CHECK(as_set(w.field()) ==
        as_set(Field({{2, 0}, {2, 1}, {1, 0}, {2, -1}, {3, 0}})));
}

TEST_CASE("fixtures build nests with monitors on") {
  for (const char* name : {"L-shape", "spiral", "comb", "line-9", "fig2-staircase"}) {
    InstanceSpec spec = fixture(name);
    World w(spec.field, spec.start);
    RunStats st = build_nest(w, {});
    INFO(name);
    CHECK(st.nest_ok);
    CHECK(st.violations == 0);
    if (!st.early_exit) CHECK(st.iterations == st.z - 2);
  }
}

TEST_CASE("random fields build nests") {
  for (uint64_t seed = 1; seed <= 12; ++seed) {
    InstanceSpec spec = gen_random_connected(20 + int64_t(seed) * 7, seed);
    World w(spec.field, spec.start);
    RunStats st = build_nest(w, {});
    INFO("seed ", seed);
    CHECK(st.nest_ok);
    CHECK(st.violations == 0);
    if (!st.early_exit) {
      CHECK(st.iterations == st.z - 2);
      CHECK(as_set(w.field()) ==
            as_set(Field(rough_disc_cells(st.final_center, st.z).cells)));
    }
  }
}

TEST_CASE("check_invariants without a disc is not applicable") {
  World w(Field({{0, 0}, {1, 0}}), {0, 0});
  auto rep = check_invariants(w, "t");
  CHECK_FALSE(rep.applicable);
}

TEST_CASE("check_invariants recognizes a structured field") {
  // Disc at the origin, marker three away, a component four beyond it.
  Field f;
  f.add({0, 0});
  f.add({0, 3});  // marker
  f.add({0, 7});  // free component at disc distance 7
  f.add({0, 8});
  World w(f, {0, 3});
  w.seed_disc({0, 0});
  w.set_marker({0, 3});
  auto rep = check_invariants(w, "t");
  CHECK(rep.applicable);
  CHECK(rep.structured);
  CHECK(rep.strongly_structured);
  CHECK(rep.lost_components == 0);
  CHECK(rep.gap_nearest == 7);
  CHECK(rep.gap.value() == 6);

  // A far component is lost.
  Field g = f;
  g.add({0, 20});
  World u(g, {0, 3});
  u.seed_disc({0, 0});
  u.set_marker({0, 3});
  auto rep2 = check_invariants(u, "t");
  CHECK(rep2.lost_components == 1);
  CHECK_FALSE(rep2.strongly_structured);
}

TEST_CASE("disconnected input is rejected") {
  World w(Field({{0, 0}, {5, 5}}), {0, 0});
  CHECK_THROWS_AS(build_nest(w, {}), precondition_error);
}

TEST_CASE("robot weight alternates between procedures") {
  InstanceSpec spec = fixture("line-6");
  World w(spec.field, spec.start);
  NestRun run(w, {});
  // Drive one loop iteration by hand.
  w.set_marker(w.position());
  Cell seed{};
  for (Cell c : w.field().sorted())
    if (manhattan(c, w.position()) == 2) {
      seed = c;
      break;
    }
  w.seed_disc(seed);
  run.sweep();
  CHECK_FALSE(w.heavy());
  CHECK(w.position() == *w.marker());
  FindOutcome fo = run.find_next_brick();
  CHECK(w.heavy());
  run.return_to_marker(fo);
  CHECK(w.heavy());
  CHECK(w.position() == *w.marker());
  run.extend_rough_disc();
  CHECK_FALSE(w.heavy());
  CHECK(w.position() == *w.marker());
  CHECK(run.violations().empty());
}

TEST_CASE("sweep pushes nearby bricks out to the drop ring") {
  // A disc, its marker, and one stray brick five cells from the disc.
  Field f;
  f.add({0, 0});
  f.add({3, 0});  // marker (distance 3)
  f.add({0, 5});  // stray brick inside the cleared zone
  f.add({0, 7});  // free component keeping the marker rule satisfiable
  f.add({1, 7});
  World w(f, {3, 0});
  w.seed_disc({0, 0});
  w.set_marker({3, 0});
  NestRun run(w, {});
  run.sweep();
  CHECK(run.violations().empty());
  // The stray brick is no longer within the cleared zone.
  for (Cell c : w.field()) {
    if (w.marker() && c == *w.marker()) continue;
    int64_t d = distance_to_rough_disc(c, *w.disc());
    CHECK((d == 0 || d >= 7));
  }
  CHECK(w.position() == *w.marker());
  auto rep = check_invariants(w, "post-sweep");
  CHECK(rep.strongly_structured);
}

TEST_CASE("find_next_brick on a singleton component picks it directly") {
  Field f;
  f.add({0, 0});
  f.add({3, 0});  // marker
  f.add({7, 0});  // singleton free component
  World w(f, {3, 0});
  w.seed_disc({0, 0});
  w.set_marker({3, 0});
  NestRun run(w, {});
  FindOutcome fo = run.find_next_brick();
  CHECK(w.heavy());
  CHECK_FALSE(fo.shifted);
  CHECK(fo.wo.walk.cell_count() == 1);
  CHECK_FALSE(w.field().contains({7, 0}));
  run.return_to_marker(fo);
  CHECK(w.position() == Cell{3, 0});
  CHECK(w.heavy());
  CHECK(run.violations().empty());
}
