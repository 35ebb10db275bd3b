#include "nest/replay.hpp"

#include <sstream>

namespace nest {

namespace {

// Same contract as the engine's table, written out independently.
bool replay_legal(char cur, char weight, char leave, char arrive) {
  if (cur == 'e') {
    if (weight == 'l') return leave == 'e' && arrive == 'l';
    return (leave == 'e' && arrive == 'h') || (leave == 'f' && arrive == 'l');
  }
  if (weight == 'l') return (leave == 'f' && arrive == 'l') || (leave == 'e' && arrive == 'h');
  return leave == 'f' && arrive == 'h';
}

}  // namespace

ReplayResult replay_trace(std::istream& in, const InstanceSpec* expected_initial,
                          const std::function<void(const TraceEvent&, const ReplayState&)>& on_event) {
  ReplayResult res;
  ReplayState st;
  bool started = false;
  uint64_t expected_index = 0;
  std::string line;

  auto issue = [&](uint64_t idx, const std::string& msg) {
    res.issues.push_back({idx, msg});
  };

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    TraceEvent ev;
    try {
      ev = parse_event(line);
    } catch (const error& e) {
      issue(expected_index, e.what());
      break;
    }
    ++res.events;
    if (ev.index != expected_index)
      issue(ev.index, "event index out of sequence");
    expected_index = ev.index + 1;

    if (ev.kind == EventKind::Note) {
      std::istringstream ps(ev.payload);
      if (ev.tag == "init-brick") {
        int x, y;
        ps >> x >> y;
        st.field.add({x, y});
        ++st.bricks;
      } else if (ev.tag == "init-start") {
        int x, y;
        ps >> x >> y;
        st.robot = {x, y};
        started = true;
        if (expected_initial) {
          if (!(st.field == expected_initial->field))
            issue(ev.index, "trace initial field differs from the instance");
          if (!(st.robot == expected_initial->start))
            issue(ev.index, "trace start cell differs from the instance");
        }
      } else if (ev.tag == "marker") {
        int x, y;
        ps >> x >> y;
        st.marker = Cell{x, y};
      } else if (ev.tag == "marker-clear") {
        st.marker.reset();
      } else if (ev.tag == "disc-seed") {
        int x, y;
        ps >> x >> y;
        st.disc_center = Cell{x, y};
        st.disc_cells = {Cell{x, y}};
      } else if (ev.tag == "disc-grow") {
        int x, y;
        ps >> x >> y;
        st.disc_cells.push_back({x, y});
      }
      if (started && !(ev.before == st.robot))
        issue(ev.index, "note position disagrees with the tracked robot");
      if (on_event) on_event(ev, st);
      continue;
    }

    if (!started) {
      issue(ev.index, "action before the init preamble");
      break;
    }
    if (!(ev.before == st.robot)) {
      issue(ev.index, "event position " + cell_str(ev.before) +
                          " disagrees with tracked robot " + cell_str(st.robot));
      break;
    }
    if (ev.kind == EventKind::Turn) {
      if (on_event) on_event(ev, st);
      continue;
    }

    char cur = st.field.contains(st.robot) ? 'f' : 'e';
    char weight = st.carrying ? 'h' : 'l';
    if (!replay_legal(cur, weight, ev.leave, ev.arrive)) {
      issue(ev.index, std::string("illegal move: (") + cur + "," + weight + ") -> (" +
                          ev.leave + "," + ev.arrive + ")");
      break;
    }
    if (cur == 'f' && ev.leave == 'e') st.field.remove(st.robot);
    if (cur == 'e' && ev.leave == 'f') st.field.add(st.robot);
    st.robot = step(st.robot, ev.dir);
    st.carrying = ev.arrive == 'h';
    ++st.moves;
    if (st.field.size() + (st.carrying ? 1 : 0) != st.bricks) {
      issue(ev.index, "brick count changed");
      break;
    }
    if (on_event) on_event(ev, st);
  }

  res.final_state = std::move(st);
  res.ok = res.issues.empty() && started;
  if (!started && res.issues.empty()) res.issues.push_back({0, "trace has no init preamble"});
  return res;
}

}  // namespace nest
