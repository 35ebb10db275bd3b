#pragma once

#include <cstdint>
#include <string>

namespace nest {

struct RenderOptions {
  int64_t every = 0;  // emit a frame each N events; 0 = initial and final only
  std::string format = "ascii";  // ascii | svg
  std::string outdir = "frames";
};

// Replays a trace file and writes numbered snapshot frames. Bricks, disc
// cells, the marker and the robot are drawn distinctly. Returns the number
// of frames written.
int render_trace(const std::string& trace_path, const RenderOptions& opt);

}  // namespace nest
