#pragma once

#include <optional>
#include <vector>

#include "nest/field.hpp"
#include "nest/geom.hpp"

namespace nest {

// Number of cells within Manhattan radius r: 2r^2 + 2r + 1.
int64_t disc_size(int64_t r);

// The 4R cells at distance exactly R from center, counterclockwise,
// starting one step North of the East-most cell of the radius-(R-1) disc,
// i.e. at (center.x + R - 1, center.y + 1).
std::vector<Cell> ring_cells(Cell center, int64_t R);

// A disc of radius r plus a counterclockwise prefix of the next ring.
struct DiscLayout {
  Cell center;
  int64_t size = 0;
  int64_t radius = 0;              // r of the complete inner disc
  std::vector<Cell> prefix;        // the size - disc_size(radius) ring cells, ccw order
  std::vector<Cell> cells;         // inner disc in ≺ order, then prefix in ccw order

  bool contains(Cell c) const;
};

// The unique rough disc of the given size at the given center (size >= 1).
DiscLayout rough_disc_cells(Cell center, int64_t z);

// Largest number of cells a field of span s can have:
// z_{s/2} for even s, z_{(s-1)/2} + s for odd s.
int64_t max_size_for_span(int64_t s);

// Smallest s with max_size_for_span(s) >= z; the span of every nest of size z.
int64_t minimal_span(int64_t z);

// True iff the field's span equals the minimal span for its size.
bool is_nest(const Field& f);

// Exact Manhattan distance from p to the cell set of d (0 when p is in it).
int64_t distance_to_rough_disc(Cell p, const DiscLayout& d);

// Largest k such that every full cell outside disc ∪ {marker} is at distance
// >= k+1 from the disc; nullopt when no such cell exists.
std::optional<int64_t> gap_width(const Field& f, const DiscLayout& disc, Cell marker);

}  // namespace nest
