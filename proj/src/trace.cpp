#include "nest/trace.hpp"

#include <charconv>
#include <cstdio>

namespace nest {

std::string format_event(const TraceEvent& ev) {
  char buf[96];
  int n = 0;
  switch (ev.kind) {
    case EventKind::Move:
      n = std::snprintf(buf, sizeof buf, "m %llu %d %d %c %c %c",
                        (unsigned long long)ev.index, ev.before.x, ev.before.y,
                        dir_char(ev.dir), ev.leave, ev.arrive);
      return std::string(buf, size_t(n));
    case EventKind::Turn:
      n = std::snprintf(buf, sizeof buf, "t %llu %d %d %c", (unsigned long long)ev.index,
                        ev.before.x, ev.before.y, ev.turn == Turn::Left ? 'L' : 'R');
      return std::string(buf, size_t(n));
    default: {
      std::string s = "n " + std::to_string(ev.index) + " " + std::to_string(ev.before.x) +
                      " " + std::to_string(ev.before.y) + " " + ev.tag;
      if (!ev.payload.empty()) s += " " + ev.payload;
      return s;
    }
  }
}

namespace {

struct Cursor {
  std::string_view s;
  size_t pos = 0;

  std::string_view token() {
    while (pos < s.size() && s[pos] == ' ') ++pos;
    size_t start = pos;
    while (pos < s.size() && s[pos] != ' ') ++pos;
    if (start == pos) throw error("trace line truncated: " + std::string(s));
    return s.substr(start, pos - start);
  }

  std::string_view rest() {
    while (pos < s.size() && s[pos] == ' ') ++pos;
    return s.substr(pos);
  }

  int64_t number() {
    auto t = token();
    int64_t v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size())
      throw error("bad number in trace line: " + std::string(s));
    return v;
  }
};

}  // namespace

TraceEvent parse_event(std::string_view line) {
  Cursor c{line};
  auto kind = c.token();
  TraceEvent ev;
  ev.index = uint64_t(c.number());
  ev.before.x = int32_t(c.number());
  ev.before.y = int32_t(c.number());
  if (kind == "m") {
    ev.kind = EventKind::Move;
    auto d = c.token();
    auto lv = c.token();
    auto ar = c.token();
    if (d.size() != 1 || lv.size() != 1 || ar.size() != 1)
      throw error("malformed move event: " + std::string(line));
    ev.dir = dir_from_char(d[0]);
    ev.leave = lv[0];
    ev.arrive = ar[0];
    if ((ev.leave != 'e' && ev.leave != 'f') || (ev.arrive != 'l' && ev.arrive != 'h'))
      throw error("malformed move flags: " + std::string(line));
    return ev;
  }
  if (kind == "t") {
    ev.kind = EventKind::Turn;
    auto t = c.token();
    if (t == "L")
      ev.turn = Turn::Left;
    else if (t == "R")
      ev.turn = Turn::Right;
    else
      throw error("malformed turn event: " + std::string(line));
    return ev;
  }
  if (kind == "n") {
    ev.kind = EventKind::Note;
    ev.tag = std::string(c.token());
    ev.payload = std::string(c.rest());
    return ev;
  }
  throw error("unknown trace event kind: " + std::string(line));
}

std::string hash_hex(uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return std::string(buf);
}

}  // namespace nest
