#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "nest/field.hpp"

namespace nest {

struct parse_error : error {
  parse_error(int line, int col, const std::string& msg)
      : error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

struct not_connected : error {
  using error::error;
};

struct start_not_full : error {
  using error::error;
};

struct InstanceSpec {
  Field field;
  Cell start;
  std::string label;
  std::string family;
  std::optional<uint64_t> seed;

  friend bool operator==(const InstanceSpec& a, const InstanceSpec& b) {
    return a.field == b.field && a.start == b.start;
  }
};

// Text format: optional header lines, then grid rows (first row is North).
//   # comment
//   origin X Y        -- grid cell (X, Y) is the first column of the LAST row
//   start X Y         -- explicit start cell (alternative to 'S' in the grid)
// Grid characters: '#' full, '.' empty, 'S' full + start, 's' start on an
// empty cell (always an error: the robot must start on a brick).
InstanceSpec parse_instance(std::string_view text);
std::string serialize_instance(const InstanceSpec& spec);
InstanceSpec load_instance_file(const std::string& path);
void save_instance_file(const InstanceSpec& spec, const std::string& path);

// Connected field of exactly z cells grown by seeded frontier expansion;
// start is the ≺-minimal cell. Deterministic in (z, seed).
InstanceSpec gen_random_connected(int64_t z, uint64_t seed);

// An a x b block with the z - ab leftover cells on top of the West-most
// columns; b is s_prime or ceil(10*sqrt(z)), whichever the size rule picks,
// clamped to z.
InstanceSpec gen_rough_rectangle(int64_t z, int64_t s_prime);

// Named hand-built shapes: plus, line-<k>, L-shape, spiral, comb,
// fig2-staircase (the canonical six-segment walk example).
InstanceSpec fixture(std::string_view name);

}  // namespace nest
