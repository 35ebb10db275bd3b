#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>

namespace nest {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Robot issued an output that violates the pick/drop legality table.
struct illegal_action : error {
  using error::error;
};

// A procedure was entered in a state its contract forbids.
struct precondition_error : error {
  using error::error;
};

// The controller reached a state the algorithm's invariants rule out; always a bug.
struct controller_error : error {
  using error::error;
};

struct Cell {
  int32_t x = 0;
  int32_t y = 0;

  friend bool operator==(Cell a, Cell b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(Cell a, Cell b) { return !(a == b); }
};

inline int64_t manhattan(Cell a, Cell b) {
  return std::abs(int64_t{a.x} - b.x) + std::abs(int64_t{a.y} - b.y);
}

// Total order used for every tie-break in the artifact: smaller y first,
// then smaller-or-equal x. Non-strict: cell_less(c, c) is true.
inline bool cell_less(Cell a, Cell b) {
  return a.y < b.y || (a.y == b.y && a.x <= b.x);
}

// Strict companion of cell_less, usable as a comparator.
inline bool cell_before(Cell a, Cell b) {
  return a.y < b.y || (a.y == b.y && a.x < b.x);
}

struct CellHash {
  size_t operator()(Cell c) const {
    uint64_t v = (uint64_t(uint32_t(c.x)) << 32) | uint32_t(c.y);
    v ^= v >> 33;
    v *= 0xff51afd7ed558ccdULL;
    v ^= v >> 33;
    v *= 0xc4ceb9fe1a85ec53ULL;
    v ^= v >> 33;
    return size_t(v);
  }
};

// Cardinal directions, clockwise. North is +y, East is +x.
enum class Dir : uint8_t { North = 0, East = 1, South = 2, West = 3 };

enum class Turn : uint8_t { Left, Right };

// Which side of a segment traversal is being watched.
enum class Side : uint8_t { Left, Right, Both };

inline Dir right_of(Dir d) { return Dir((uint8_t(d) + 1) & 3); }
inline Dir left_of(Dir d) { return Dir((uint8_t(d) + 3) & 3); }
inline Dir opposite(Dir d) { return Dir((uint8_t(d) + 2) & 3); }

inline Dir rotated(Dir d, Turn t) { return t == Turn::Left ? left_of(d) : right_of(d); }

inline Side other_side(Side s) {
  if (s == Side::Left) return Side::Right;
  if (s == Side::Right) return Side::Left;
  return Side::Both;
}

inline Cell step(Cell c, Dir d) {
  switch (d) {
    case Dir::North: return {c.x, int32_t(c.y + 1)};
    case Dir::East: return {int32_t(c.x + 1), c.y};
    case Dir::South: return {c.x, int32_t(c.y - 1)};
    default: return {int32_t(c.x - 1), c.y};
  }
}

inline Dir side_dir(Dir facing, Side s) {
  return s == Side::Left ? left_of(facing) : right_of(facing);
}

inline char dir_char(Dir d) { return "NESW"[uint8_t(d)]; }

inline Dir dir_from_char(char c) {
  switch (c) {
    case 'N': return Dir::North;
    case 'E': return Dir::East;
    case 'S': return Dir::South;
    case 'W': return Dir::West;
    default: throw error(std::string("bad direction char: ") + c);
  }
}

inline std::string cell_str(Cell c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

}  // namespace nest
