#include "nest/render.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "nest/replay.hpp"

namespace nest {

namespace {

struct Box {
  int32_t xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool init = false;
  void include(Cell c) {
    if (!init) {
      xmin = xmax = c.x;
      ymin = ymax = c.y;
      init = true;
      return;
    }
    xmin = std::min(xmin, c.x);
    xmax = std::max(xmax, c.x);
    ymin = std::min(ymin, c.y);
    ymax = std::max(ymax, c.y);
  }
};

void write_ascii(const std::string& path, const ReplayState& st, const Box& box,
                 uint64_t event_index) {
  std::ofstream out(path);
  out << "# event " << event_index << " bricks " << st.field.size()
      << (st.carrying ? " carrying" : "") << "\n";
  std::unordered_set<Cell, CellHash> disc(st.disc_cells.begin(), st.disc_cells.end());
  for (int32_t y = box.ymax; y >= box.ymin; --y) {
    std::string row;
    for (int32_t x = box.xmin; x <= box.xmax; ++x) {
      Cell c{x, y};
      char ch = '.';
      if (st.field.contains(c)) ch = '#';
      if (disc.count(c) && st.field.contains(c)) ch = 'D';
      if (st.marker && *st.marker == c) ch = 'M';
      if (st.robot == c) ch = st.carrying ? 'H' : 'R';
      row += ch;
    }
    out << row << "\n";
  }
}

void write_svg(const std::string& path, const ReplayState& st, const Box& box,
               uint64_t event_index) {
  std::ofstream out(path);
  const int cell = 10;
  int w = (box.xmax - box.xmin + 1) * cell;
  int h = (box.ymax - box.ymin + 1) * cell;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
      << "<!-- event " << event_index << " -->\n"
      << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  std::unordered_set<Cell, CellHash> disc(st.disc_cells.begin(), st.disc_cells.end());
  auto px = [&](Cell c) {
    return std::pair<int, int>{(c.x - box.xmin) * cell, (box.ymax - c.y) * cell};
  };
  for (Cell c : st.field.sorted()) {
    auto [x, y] = px(c);
    const char* fill = disc.count(c) ? "#4a72b0" : "#888888";
    if (st.marker && *st.marker == c) fill = "#c0392b";
    out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\""
        << cell << "\" fill=\"" << fill << "\"/>\n";
  }
  auto [rx, ry] = px(st.robot);
  out << "<circle cx=\"" << rx + cell / 2 << "\" cy=\"" << ry + cell / 2 << "\" r=\""
      << cell / 3 << "\" fill=\"" << (st.carrying ? "#e67e22" : "#2ecc71") << "\"/>\n";
  out << "</svg>\n";
}

}  // namespace

int render_trace(const std::string& trace_path, const RenderOptions& opt) {
  // First pass: global bounding box over every state.
  Box box;
  {
    std::ifstream in(trace_path);
    if (!in) throw error("cannot open trace: " + trace_path);
    replay_trace(in, nullptr, [&](const TraceEvent&, const ReplayState& st) {
      for (Cell c : st.field) box.include(c);
      box.include(st.robot);
    });
  }
  if (!box.init) throw error("trace contains no state");

  std::filesystem::create_directories(opt.outdir);
  std::ifstream in(trace_path);
  int frames = 0;
  int64_t since_frame = -1;  // forces an initial frame
  uint64_t last_index = 0;
  bool pending = false;
  ReplayState last_state;

  auto emit = [&](const ReplayState& st, uint64_t idx) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%06d", frames);
    std::string path = opt.outdir + "/" + name + (opt.format == "svg" ? ".svg" : ".txt");
    if (opt.format == "svg")
      write_svg(path, st, box, idx);
    else
      write_ascii(path, st, box, idx);
    ++frames;
  };

  ReplayResult res = replay_trace(in, nullptr, [&](const TraceEvent& ev, const ReplayState& st) {
    last_state = st;
    last_index = ev.index;
    pending = true;
    if (since_frame < 0) {
      emit(st, ev.index);
      since_frame = 0;
      pending = false;
      return;
    }
    ++since_frame;
    if (opt.every > 0 && since_frame >= opt.every) {
      emit(st, ev.index);
      since_frame = 0;
      pending = false;
    }
  });
  if (!res.ok) throw error("trace replay failed: " +
                           (res.issues.empty() ? "unknown" : res.issues.front().message));
  if (pending) emit(last_state, last_index);
  return frames;
}

}  // namespace nest
