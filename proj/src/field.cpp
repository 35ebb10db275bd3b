#include "nest/field.hpp"

#include <limits>

namespace nest {

int64_t span(const Field& f) {
  if (f.size() <= 1) return 0;
  int64_t umin = std::numeric_limits<int64_t>::max(), umax = std::numeric_limits<int64_t>::min();
  int64_t vmin = umin, vmax = umax;
  for (Cell c : f) {
    int64_t u = int64_t{c.x} + c.y;
    int64_t v = int64_t{c.x} - c.y;
    umin = std::min(umin, u);
    umax = std::max(umax, u);
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  return std::max(umax - umin, vmax - vmin);
}

std::vector<std::vector<Cell>> components(const Field& f) {
  std::vector<std::vector<Cell>> out;
  std::unordered_set<Cell, CellHash> seen;
  for (Cell c : f.sorted()) {
    if (seen.count(c)) continue;
    std::vector<Cell> comp;
    std::vector<Cell> stack{c};
    seen.insert(c);
    while (!stack.empty()) {
      Cell cur = stack.back();
      stack.pop_back();
      comp.push_back(cur);
      for (int d = 0; d < 4; ++d) {
        Cell n = step(cur, Dir(d));
        if (f.contains(n) && !seen.count(n)) {
          seen.insert(n);
          stack.push_back(n);
        }
      }
    }
    std::sort(comp.begin(), comp.end(), cell_before);
    out.push_back(std::move(comp));
  }
  // The outer loop already runs in ≺ order, so components come out keyed
  // by their ≺-minimal cell.
  return out;
}

int full_neighbor_count(const Field& f, Cell c) {
  int n = 0;
  for (int d = 0; d < 4; ++d)
    if (f.contains(step(c, Dir(d)))) ++n;
  return n;
}

bool has_corner_pair(const Field& f, Cell c) {
  bool n = f.contains(step(c, Dir::North));
  bool e = f.contains(step(c, Dir::East));
  bool s = f.contains(step(c, Dir::South));
  bool w = f.contains(step(c, Dir::West));
  return (n && e) || (e && s) || (s && w) || (w && n);
}

CellClass classify_cell(const Field& f, Cell c) {
  if (!f.contains(c)) throw precondition_error("classify_cell: cell is empty " + cell_str(c));
  CellClass cc;
  int full = full_neighbor_count(f, c);
  cc.border = full < 4;
  cc.leaf = full == 1;
  cc.special = cc.leaf || has_corner_pair(f, c);
  return cc;
}

int64_t set_distance(const std::vector<Cell>& a, const std::vector<Cell>& b) {
  if (a.empty() || b.empty()) throw precondition_error("set_distance: empty set");
  int64_t best = std::numeric_limits<int64_t>::max();
  for (Cell p : a)
    for (Cell q : b) best = std::min(best, manhattan(p, q));
  return best;
}

}  // namespace nest
