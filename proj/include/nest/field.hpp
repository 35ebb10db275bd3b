#pragma once

#include <algorithm>
#include <unordered_set>
#include <vector>

#include "nest/geom.hpp"

namespace nest {

// Sparse set of full cells. Everything not in the set is empty.
class Field {
 public:
  Field() = default;
  explicit Field(const std::vector<Cell>& cells) {
    for (Cell c : cells) full_.insert(c);
  }
  Field(std::initializer_list<Cell> cells) {
    for (Cell c : cells) full_.insert(c);
  }

  bool contains(Cell c) const { return full_.count(c) != 0; }
  int64_t size() const { return int64_t(full_.size()); }
  bool empty() const { return full_.empty(); }

  void add(Cell c) { full_.insert(c); }
  void remove(Cell c) { full_.erase(c); }

  auto begin() const { return full_.begin(); }
  auto end() const { return full_.end(); }

  // Cells in ≺ order. Use this wherever iteration order is observable.
  std::vector<Cell> sorted() const {
    std::vector<Cell> v(full_.begin(), full_.end());
    std::sort(v.begin(), v.end(), cell_before);
    return v;
  }

  friend bool operator==(const Field& a, const Field& b) { return a.full_ == b.full_; }

 private:
  std::unordered_set<Cell, CellHash> full_;
};

// Max pairwise Manhattan distance; 0 for fields of size <= 1.
// Computed from the extremes of x+y and x-y, which equals the pairwise max.
int64_t span(const Field& f);

// 4-adjacency partition. Components are sorted by their ≺-minimal cell and
// each component's cells are sorted by ≺.
std::vector<std::vector<Cell>> components(const Field& f);

struct CellClass {
  bool border = false;   // some 4-neighbor is empty
  bool leaf = false;     // exactly one full 4-neighbor
  bool special = false;  // leaf, or two full neighbors in perpendicular directions
};

// Classifies a full cell; throws precondition_error if c is empty.
CellClass classify_cell(const Field& f, Cell c);

int full_neighbor_count(const Field& f, Cell c);

// True when c has full neighbors in two perpendicular directions.
bool has_corner_pair(const Field& f, Cell c);

// Min Manhattan distance over pairs; both sets must be nonempty.
int64_t set_distance(const std::vector<Cell>& a, const std::vector<Cell>& b);

}  // namespace nest
