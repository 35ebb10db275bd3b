#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nest/walks.hpp"
#include "nest/world.hpp"

namespace nest {

struct InvariantReport {
  std::string checkpoint;
  bool applicable = false;         // false until the disc ledger exists
  bool structured = false;         // marker at 3 from disc + 4 from a free component, gap held
  bool strongly_structured = false;
  int lost_components = 0;         // free components entirely beyond distance 7
  std::optional<int64_t> gap;      // gap_width value (nearest free distance - 1)
  int64_t gap_nearest = -1;        // nearest free-cell distance, -1 when none
  bool marker_isolated = true;
  std::vector<std::string> violations;
};

// Neutral evaluation of the field invariants; expectations per checkpoint are
// the caller's business.
InvariantReport check_invariants(const World& w, const std::string& checkpoint);

struct NestOptions {
  bool monitors = true;
};

struct FindOutcome {
  WalkOutcome wo;
  bool shifted = false;
  bool at_first_of_last = false;  // shifting consumed the last segment entirely
  ShiftRecord shift;
  Cell walk_start;
  int64_t component_size = 0;
  int64_t component_span = 0;
};

struct RunStats {
  int64_t z = 0;
  int64_t initial_span = 0;
  int64_t steps = 0;
  int64_t sensing_steps = 0;
  int64_t iterations = 0;
  bool early_exit = false;  // field already had span <= 2
  bool nest_ok = false;
  int64_t violations = 0;
  Cell final_center;
};

// Orchestrates the build: marker/disc setup, the sweep/find/return/extend
// loop, the final marker brick, and the runtime invariant monitors.
class NestRun {
 public:
  NestRun(World& w, NestOptions opt) : w_(w), opt_(opt) {}

  RunStats run();

  // The individual procedures, exposed for direct tests.
  void sweep();
  FindOutcome find_next_brick();
  void return_to_marker(const FindOutcome& fo);
  void extend_rough_disc();

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  friend struct SweepScope;
  Cell next_extension_cell() const;
  int64_t free_cell_count() const;
  Cell nearest_free_cell() const;
  std::vector<Cell> free_component_of(Cell c) const;
  Cell choose_marker_site(const std::vector<Cell>& comp) const;
  void carry_from_current(Cell to);
  void fail(const std::string& checkpoint, const std::string& msg);
  void expect(bool ok, const std::string& checkpoint, const std::string& msg);
  void check_head(const std::string& tag);

  World& w_;
  NestOptions opt_;
  std::vector<std::string> violations_;
  int64_t long_shift_sweep_walks_ = 0;  // per-sweep count, see sweep()
};

// Convenience wrapper: run the whole algorithm on a world.
RunStats build_nest(World& w, const NestOptions& opt = {});

}  // namespace nest
