#include "nest/instances.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>
#include <vector>

namespace nest {

namespace {

void require_connected(const InstanceSpec& spec) {
  if (spec.field.size() == 0) throw not_connected("instance has no full cells");
  if (components(spec.field).size() != 1) throw not_connected("field is not connected");
  if (!spec.field.contains(spec.start)) throw start_not_full("start cell is empty");
}

int64_t parse_int(std::string_view tok, int line) {
  int64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw parse_error(line, 1, "expected an integer, got '" + std::string(tok) + "'");
  return v;
}

}  // namespace

InstanceSpec parse_instance(std::string_view text) {
  InstanceSpec spec;
  Cell origin{0, 0};
  std::optional<Cell> start;
  std::vector<std::string> rows;
  int lineno = 0;

  std::istringstream in{std::string(text)};
  std::string line;
  bool in_grid = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#' || line[0] == '.' || line[0] == 'S' || line[0] == 's') {
      // '#' is ambiguous between a comment and a grid row; headers never
      // start with '#', so treat it as grid once any grid row was seen, and
      // as a grid row when it contains only grid characters.
      bool grid_chars = !line.empty() &&
                        line.find_first_not_of("#.Ss") == std::string::npos;
      if (line.empty()) {
        if (in_grid) break;  // blank line ends the grid
        continue;
      }
      if (grid_chars) {
        in_grid = true;
        rows.push_back(line);
        continue;
      }
      if (line[0] == '#') continue;  // comment
    }
    std::istringstream ls(line);
    std::string key, a, b;
    ls >> key >> a >> b;
    if (key == "origin") {
      origin = {int32_t(parse_int(a, lineno)), int32_t(parse_int(b, lineno))};
    } else if (key == "start") {
      start = Cell{int32_t(parse_int(a, lineno)), int32_t(parse_int(b, lineno))};
    } else {
      throw parse_error(lineno, 1, "unrecognized header '" + key + "'");
    }
  }
  if (rows.empty()) throw parse_error(lineno, 1, "no grid rows");

  // First row is the North-most; origin addresses the first column of the
  // last (South-most) row.
  int grid_first_line = lineno - int(rows.size()) + 1;
  for (size_t r = 0; r < rows.size(); ++r) {
    int32_t y = int32_t(origin.y + int64_t(rows.size() - 1 - r));
    for (size_t i = 0; i < rows[r].size(); ++i) {
      char ch = rows[r][i];
      Cell c{int32_t(origin.x + int64_t(i)), y};
      switch (ch) {
        case '.': break;
        case '#': spec.field.add(c); break;
        case 'S':
          spec.field.add(c);
          if (start) throw parse_error(int(grid_first_line + r), int(i + 1), "duplicate start");
          start = c;
          break;
        case 's':
          if (start) throw parse_error(int(grid_first_line + r), int(i + 1), "duplicate start");
          start = c;
          break;
        default:
          throw parse_error(int(grid_first_line + r), int(i + 1),
                            std::string("bad grid character '") + ch + "'");
      }
    }
  }
  if (!start) throw parse_error(lineno, 1, "no start cell");
  spec.start = *start;
  if (!spec.field.contains(spec.start)) throw start_not_full("start cell is empty");
  require_connected(spec);
  return spec;
}

std::string serialize_instance(const InstanceSpec& spec) {
  auto cells = spec.field.sorted();
  int32_t xmin = cells.front().x, xmax = cells.front().x;
  int32_t ymin = cells.front().y, ymax = cells.front().y;
  for (Cell c : cells) {
    xmin = std::min(xmin, c.x);
    xmax = std::max(xmax, c.x);
    ymin = std::min(ymin, c.y);
    ymax = std::max(ymax, c.y);
  }
  std::string out;
  if (xmin != 0 || ymin != 0)
    out += "origin " + std::to_string(xmin) + " " + std::to_string(ymin) + "\n";
  for (int32_t y = ymax; y >= ymin; --y) {
    std::string row;
    for (int32_t x = xmin; x <= xmax; ++x) {
      Cell c{x, y};
      if (c == spec.start)
        row += 'S';
      else if (spec.field.contains(c))
        row += '#';
      else
        row += '.';
    }
    out += row + "\n";
  }
  return out;
}

InstanceSpec load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open instance file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  InstanceSpec spec = parse_instance(ss.str());
  spec.label = path;
  return spec;
}

void save_instance_file(const InstanceSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw error("cannot open instance file for writing: " + path);
  out << serialize_instance(spec);
}

InstanceSpec gen_random_connected(int64_t z, uint64_t seed) {
  if (z < 1) throw precondition_error("gen_random_connected: z must be >= 1");
  std::mt19937_64 rng(seed);
  std::unordered_set<Cell, CellHash> full;
  std::vector<Cell> frontier;
  std::unordered_set<Cell, CellHash> in_frontier;
  auto push_frontier = [&](Cell c) {
    if (!full.count(c) && !in_frontier.count(c)) {
      frontier.push_back(c);
      in_frontier.insert(c);
    }
  };
  Cell cur{0, 0};
  full.insert(cur);
  for (int d = 0; d < 4; ++d) push_frontier(step(cur, Dir(d)));
  while (int64_t(full.size()) < z) {
    // Uniform pick with swap-remove keeps growth deterministic in the seed.
    size_t i = size_t(rng() % frontier.size());
    Cell c = frontier[i];
    frontier[i] = frontier.back();
    frontier.pop_back();
    in_frontier.erase(c);
    full.insert(c);
    for (int d = 0; d < 4; ++d) push_frontier(step(c, Dir(d)));
  }
  InstanceSpec spec;
  spec.field = Field(std::vector<Cell>(full.begin(), full.end()));
  spec.start = spec.field.sorted().front();
  spec.seed = seed;
  spec.family = "random";
  spec.label = "random-z" + std::to_string(z) + "-s" + std::to_string(seed);
  require_connected(spec);
  return spec;
}

InstanceSpec gen_rough_rectangle(int64_t z, int64_t s_prime) {
  if (s_prime <= 0 || s_prime >= z)
    throw precondition_error("gen_rough_rectangle: need 0 < s_prime < z");
  int64_t ten_sqrt = int64_t(std::ceil(10.0 * std::sqrt(double(z))));
  int64_t b = s_prime >= ten_sqrt ? s_prime : ten_sqrt;
  b = std::min(b, z);  // the asymptotic rule can exceed z at small sizes
  int64_t a = z / b;
  int64_t rem = z - a * b;
  InstanceSpec spec;
  for (int64_t y = 0; y < a; ++y)
    for (int64_t x = 0; x < b; ++x) spec.field.add({int32_t(x), int32_t(y)});
  for (int64_t x = 0; x < rem; ++x) spec.field.add({int32_t(x), int32_t(a)});
  spec.start = spec.field.sorted().front();
  spec.family = "rect";
  spec.label = "rect-z" + std::to_string(z) + "-b" + std::to_string(b);
  require_connected(spec);
  return spec;
}

namespace {

InstanceSpec from_cells(std::vector<Cell> cells, const std::string& label) {
  InstanceSpec spec;
  spec.field = Field(std::move(cells));
  spec.start = spec.field.sorted().front();
  spec.family = "fixture";
  spec.label = label;
  require_connected(spec);
  return spec;
}

// Staircase component with three left-free and three right-free segments,
// six switch sites, and a shift that ends three cells short of the far end.
std::vector<Cell> staircase_cells() {
  std::vector<Cell> v;
  // walk cells w1..w20
  v.push_back({0, 0});
  v.push_back({0, 1});
  v.push_back({0, 2});
  for (int x = -1; x >= -5; --x) v.push_back({x, 2});
  v.push_back({-5, 3});
  v.push_back({-5, 4});
  v.push_back({-6, 4});
  v.push_back({-6, 5});
  for (int x = -7; x >= -14; --x) v.push_back({x, 5});
  // side bricks that become switch sources, plus the anchor below the far end
  v.push_back({-3, 1});
  v.push_back({-4, 1});
  v.push_back({-7, 4});
  v.push_back({-9, 4});
  v.push_back({-10, 4});
  v.push_back({-14, 4});
  return v;
}

}  // namespace

InstanceSpec fixture(std::string_view name) {
  if (name == "plus")
    return from_cells({{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}}, "plus");
  if (name.substr(0, 5) == "line-") {
    int64_t k = parse_int(name.substr(5), 1);
    if (k < 1) throw error("line fixture needs a positive length");
    std::vector<Cell> v;
    for (int64_t x = 0; x < k; ++x) v.push_back({int32_t(x), 0});
    return from_cells(std::move(v), std::string(name));
  }
  if (name == "L-shape")
    return from_cells({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 1}, {0, 2}, {0, 3}}, "L-shape");
  if (name == "spiral") {
    std::vector<Cell> v;
    auto seg = [&](Cell a, Cell b) {
      Cell c = a;
      v.push_back(c);
      while (c != b) {
        c = step(c, dir_from_char(b.x > c.x   ? 'E'
                                  : b.x < c.x ? 'W'
                                  : b.y > c.y ? 'N'
                                              : 'S'));
        v.push_back(c);
      }
    };
    seg({0, 0}, {6, 0});
    seg({6, 0}, {6, 6});
    seg({6, 6}, {0, 6});
    seg({0, 6}, {0, 2});
    seg({0, 2}, {4, 2});
    seg({4, 2}, {4, 4});
    seg({4, 4}, {2, 4});
    std::sort(v.begin(), v.end(), cell_before);
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return from_cells(std::move(v), "spiral");
  }
  if (name == "comb") {
    std::vector<Cell> v;
    for (int x = 0; x < 9; ++x) v.push_back({x, 0});
    for (int x = 0; x < 9; x += 2)
      for (int y = 1; y <= 3; ++y) v.push_back({x, y});
    return from_cells(std::move(v), "comb");
  }
  if (name == "fig2-staircase") return from_cells(staircase_cells(), "fig2-staircase");
  throw error("unknown fixture: " + std::string(name));
}

}  // namespace nest
