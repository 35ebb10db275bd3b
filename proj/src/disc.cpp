#include "nest/disc.hpp"

#include <algorithm>
#include <limits>

namespace nest {

int64_t disc_size(int64_t r) {
  if (r < 0) throw precondition_error("disc_size: negative radius");
  return 2 * r * r + 2 * r + 1;
}

std::vector<Cell> ring_cells(Cell center, int64_t R) {
  if (R < 1) throw precondition_error("ring_cells: radius must be >= 1");
  std::vector<Cell> out;
  out.reserve(size_t(4 * R));
  auto push = [&](int64_t dx, int64_t dy) {
    out.push_back({int32_t(center.x + dx), int32_t(center.y + dy)});
  };
  for (int64_t k = 1; k <= R; ++k) push(R - k, k);    // NE edge, starts (R-1, 1)
  for (int64_t k = 1; k <= R; ++k) push(-k, R - k);   // NW edge
  for (int64_t k = 1; k <= R; ++k) push(-R + k, -k);  // SW edge
  for (int64_t k = 1; k <= R; ++k) push(k, -R + k);   // SE edge, ends (R, 0)
  return out;
}

bool DiscLayout::contains(Cell c) const {
  if (manhattan(c, center) <= radius) return true;
  for (Cell q : prefix)
    if (q == c) return true;
  return false;
}

DiscLayout rough_disc_cells(Cell center, int64_t z) {
  if (z < 1) throw precondition_error("rough_disc_cells: size must be >= 1");
  int64_t r = 0;
  while (disc_size(r + 1) <= z) ++r;
  DiscLayout d;
  d.center = center;
  d.size = z;
  d.radius = r;
  for (int64_t dy = -r; dy <= r; ++dy) {
    int64_t w = r - std::abs(dy);
    for (int64_t dx = -w; dx <= w; ++dx)
      d.cells.push_back({int32_t(center.x + dx), int32_t(center.y + dy)});
  }
  std::sort(d.cells.begin(), d.cells.end(), cell_before);
  int64_t extra = z - disc_size(r);
  if (extra > 0) {
    std::vector<Cell> ring = ring_cells(center, r + 1);
    d.prefix.assign(ring.begin(), ring.begin() + extra);
    d.cells.insert(d.cells.end(), d.prefix.begin(), d.prefix.end());
  }
  return d;
}

int64_t max_size_for_span(int64_t s) {
  if (s < 0) throw precondition_error("max_size_for_span: negative span");
  if (s % 2 == 0) return disc_size(s / 2);
  return disc_size((s - 1) / 2) + s;
}

int64_t minimal_span(int64_t z) {
  if (z < 1) throw precondition_error("minimal_span: size must be >= 1");
  int64_t s = 0;
  while (max_size_for_span(s) < z) ++s;
  return s;
}

bool is_nest(const Field& f) {
  if (f.size() == 0) return true;
  return span(f) == minimal_span(f.size());
}

int64_t distance_to_rough_disc(Cell p, const DiscLayout& d) {
  int64_t d0 = manhattan(p, d.center);
  if (d0 <= d.radius) return 0;
  int64_t best = d0 - d.radius;  // distance to the full inner diamond
  for (Cell q : d.prefix) best = std::min(best, manhattan(p, q));
  return best;
}

std::optional<int64_t> gap_width(const Field& f, const DiscLayout& disc, Cell marker) {
  for (Cell c : disc.cells)
    if (!f.contains(c))
      throw precondition_error("gap_width: disc cell not full " + cell_str(c));
  if (!f.contains(marker)) throw precondition_error("gap_width: marker not full");
  int64_t nearest = std::numeric_limits<int64_t>::max();
  for (Cell c : f) {
    if (c == marker) continue;
    int64_t d = distance_to_rough_disc(c, disc);
    if (d == 0) continue;  // disc cell
    nearest = std::min(nearest, d);
  }
  if (nearest == std::numeric_limits<int64_t>::max()) return std::nullopt;
  return nearest - 1;
}

}  // namespace nest
