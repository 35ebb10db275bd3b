#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nest/disc.hpp"
#include "nest/field.hpp"
#include "nest/geom.hpp"
#include "nest/trace.hpp"

namespace nest {

constexpr int kSensingRadius = 8;
// Return walks stop once the robot is this close to the marker.
constexpr int kMarkerStopDistance = 4;

struct RobotPose {
  Cell pos;
  Dir facing = Dir::North;
  bool heavy = false;  // true iff carrying a brick
};

struct Observation {
  struct Seen {
    Cell offset;  // relative to the robot
    bool marker = false;
    bool disc = false;
  };
  Cell center;
  std::vector<Seen> full_cells;  // sorted by ≺ of offset
  bool marker_visible = false;
  bool disc_visible = false;
};

struct WorldConfig {
  int sensing_cost = 0;  // charged to sensing_steps per observation, never to steps
};

// The mutable world: field, robot pose, marker/disc ledgers, counters, trace.
// Single-owner value; all mutation funnels through move()/turn().
class World {
 public:
  World(Field field, Cell start, WorldConfig cfg = {});

  const Field& field() const { return field_; }
  const RobotPose& pose() const { return pose_; }
  Cell position() const { return pose_.pos; }
  Dir facing() const { return pose_.facing; }
  bool heavy() const { return pose_.heavy; }

  bool is_full(Cell c) const { return field_.contains(c); }
  // Cell query under the sensing discipline: c must be within radius 8.
  bool sensed_full(Cell c) const;
  bool sensed_full_rel(Side s) const { return sensed_full(step(pose_.pos, side_dir(pose_.facing, s))); }
  bool sensed_full_front() const { return sensed_full(step(pose_.pos, pose_.facing)); }

  Observation observe();
  void charge_sense() { sensing_steps_ += cfg_.sensing_cost; }

  // One atomic step: validates the (cell-status, weight) -> (leave, arrive)
  // legality row, updates the cell per `leave`, moves one cell in `dir`,
  // sets weight to `arrive`, counts the step, emits the event.
  void move(Dir dir, char leave, char arrive);
  // Move that leaves the cell and the robot's weight unchanged.
  void transit(Dir dir);
  void turn(Turn t);
  void face(Dir d);  // turn (free) until facing d

  // Fetch a brick from an adjacent-ish full cell and return, restoring pose.
  // Route is vertical-first out, mirrored back. Costs 2*manhattan steps.
  void bring(Cell from);
  // Symmetric: deposit the carried brick at an empty cell and return.
  void place(Cell to);

  // Walk to target over whatever lies in between (transit only). Facing ends
  // along the last step taken.
  void walk_to(Cell target);

  // First direction in N,E,S,W order that strictly increases the distance to
  // the rough disc. Requires the disc ledger and the robot outside it.
  Dir direction_away() const;

  // Ledgers.
  std::optional<Cell> marker() const { return marker_; }
  const std::optional<DiscLayout>& disc() const { return disc_; }
  void set_marker(Cell c);
  void clear_marker();
  void seed_disc(Cell c);
  void grow_disc(Cell e);  // e must be the unique rough-disc extension cell

  void note(const std::string& tag, const std::string& payload = "");

  int64_t steps() const { return steps_; }
  int64_t sensing_steps() const { return sensing_steps_; }
  uint64_t event_count() const { return next_index_; }
  uint64_t trace_hash() const { return hash_.value; }
  void set_sink(TraceSink* sink) { sink_ = sink; }

  // Cells that became full since the last reset; used by the sweep monitor.
  const std::vector<Cell>& filled_since_mark() const { return filled_since_mark_; }
  void reset_fill_mark() { filled_since_mark_.clear(); }

 private:
  void emit(TraceEvent ev);

  Field field_;
  RobotPose pose_;
  std::optional<Cell> marker_;
  std::optional<DiscLayout> disc_;
  WorldConfig cfg_;
  int64_t steps_ = 0;
  int64_t sensing_steps_ = 0;
  int64_t total_bricks_ = 0;  // conservation guard
  uint64_t next_index_ = 0;
  Fnv64 hash_;
  TraceSink* sink_ = nullptr;
  std::vector<Cell> filled_since_mark_;
};

// Vertical leg first, then horizontal. Includes both endpoints.
std::vector<Cell> l_route(Cell from, Cell to);

}  // namespace nest
