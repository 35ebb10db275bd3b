#include "oracles.hpp"

namespace nest::oracle {

int64_t span_pairwise(const std::vector<Cell>& cells) {
  int64_t best = 0;
  for (size_t i = 0; i < cells.size(); ++i)
    for (size_t j = i + 1; j < cells.size(); ++j)
      best = std::max(best, manhattan(cells[i], cells[j]));
  return best;
}

namespace {

// Depth-first subset enumeration over the window cells (in fixed order),
// pruning once the partial span already exceeds s.
bool exists_placement(const std::vector<Cell>& window, size_t idx, int64_t remaining,
                      std::vector<Cell>& chosen, int64_t s) {
  if (remaining == 0) return true;
  if (window.size() - idx < size_t(remaining)) return false;
  // take window[idx]
  bool ok = true;
  for (Cell c : chosen)
    if (manhattan(c, window[idx]) > s) {
      ok = false;
      break;
    }
  if (ok) {
    chosen.push_back(window[idx]);
    if (exists_placement(window, idx + 1, remaining - 1, chosen, s)) return true;
    chosen.pop_back();
  }
  return exists_placement(window, idx + 1, remaining, chosen, s);
}

}  // namespace

int64_t min_span_exhaustive(int64_t z) {
  for (int64_t s = 0;; ++s) {
    std::vector<Cell> window;
    for (int32_t y = 0; y <= s; ++y)
      for (int32_t x = 0; x <= s; ++x) window.push_back({x, y});
    std::vector<Cell> chosen;
    if (exists_placement(window, 0, z, chosen, s)) return s;
  }
}

}  // namespace nest::oracle
