#pragma once

#include <iosfwd>
#include <string>

#include "nest/instances.hpp"
#include "nest/procedures.hpp"
#include "nest/render.hpp"

namespace nest {

struct RunSummary {
  int64_t z = 0;
  int64_t s = 0;
  int64_t steps = 0;
  int64_t sensing_steps = 0;
  int64_t iterations = 0;
  bool nest_ok = false;
  int64_t invariant_violations = 0;
  std::string trace_hash;
  Cell center;
  bool early_exit = false;
};

struct RunFlags {
  std::string trace_path;  // empty = no trace file
  bool monitors = true;
  int sensing_cost = 0;
  bool json = false;
};

// Builds the world (with the trace preamble), runs the algorithm, returns
// the summary. Throws on controller errors.
RunSummary run_instance(const InstanceSpec& spec, const RunFlags& flags);

std::string summary_json(const RunSummary& s);
std::string summary_human(const RunSummary& s);

// Exit codes: 0 clean, 1 result not a nest / verification failed,
// 2 input or parse problem, 3 controller error (trace flushed first).
int cmd_run(const std::string& instance_path, const RunFlags& flags, std::ostream& out,
            std::ostream& err);
int cmd_verify(const std::string& instance_path, const std::string& trace_path,
               std::ostream& out, std::ostream& err);
int cmd_bench(const std::string& manifest_path, const RunFlags& flags, std::ostream& out,
              std::ostream& err);
int cmd_render(const std::string& trace_path, const RenderOptions& opt, std::ostream& out,
               std::ostream& err);

}  // namespace nest
