#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "nest/geom.hpp"

namespace nest {

enum class EventKind : uint8_t { Move, Turn, Note };

// One atomic robot action. `before` is the robot's cell when the event fired.
struct TraceEvent {
  uint64_t index = 0;
  EventKind kind = EventKind::Note;
  Cell before;
  // move
  Dir dir = Dir::North;
  char leave = 'e';
  char arrive = 'l';
  // turn
  Turn turn = Turn::Left;
  // note
  std::string tag;
  std::string payload;
};

// Stable line encoding, one event per line:
//   m <idx> <x> <y> <N|E|S|W> <e|f> <l|h>
//   t <idx> <x> <y> <L|R>
//   n <idx> <x> <y> <tag>[ <payload>]
std::string format_event(const TraceEvent& ev);

// Parses one line; throws nest::error on malformed input.
TraceEvent parse_event(std::string_view line);

struct TraceSink {
  virtual ~TraceSink() = default;
  virtual void on_line(const std::string& line) = 0;
};

struct VectorSink : TraceSink {
  std::vector<std::string> lines;
  void on_line(const std::string& line) override { lines.push_back(line); }
};

struct FileSink : TraceSink {
  explicit FileSink(const std::string& path) : out(path) {
    if (!out) throw error("cannot open trace file for writing: " + path);
  }
  void on_line(const std::string& line) override { out << line << '\n'; }
  void flush() { out.flush(); }
  std::ofstream out;
};

// FNV-1a over the line bytes plus a trailing newline per line.
struct Fnv64 {
  uint64_t value = 1469598103934665603ULL;
  void feed(std::string_view s) {
    for (unsigned char c : s) {
      value ^= c;
      value *= 1099511628211ULL;
    }
    value ^= uint64_t('\n');
    value *= 1099511628211ULL;
  }
};

std::string hash_hex(uint64_t h);

}  // namespace nest
