#include "nest/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nest/replay.hpp"
#include "nest/world.hpp"

namespace nest {

RunSummary run_instance(const InstanceSpec& spec, const RunFlags& flags) {
  WorldConfig cfg;
  cfg.sensing_cost = flags.sensing_cost;
  World w(spec.field, spec.start, cfg);

  std::unique_ptr<FileSink> sink;
  if (!flags.trace_path.empty()) {
    sink = std::make_unique<FileSink>(flags.trace_path);
    w.set_sink(sink.get());
  }
  for (Cell c : spec.field.sorted())
    w.note("init-brick", std::to_string(c.x) + " " + std::to_string(c.y));
  w.note("init-start", std::to_string(spec.start.x) + " " + std::to_string(spec.start.y));
  w.note("config", std::string("monitors=") + (flags.monitors ? "on" : "off") +
                       " sensing-cost=" + std::to_string(flags.sensing_cost));

  NestOptions opt;
  opt.monitors = flags.monitors;
  RunStats st;
  try {
    st = build_nest(w, opt);
  } catch (...) {
    if (sink) sink->flush();
    throw;
  }
  if (sink) sink->flush();

  RunSummary s;
  s.z = st.z;
  s.s = st.initial_span;
  s.steps = st.steps;
  s.sensing_steps = st.sensing_steps;
  s.iterations = st.iterations;
  s.nest_ok = st.nest_ok;
  s.invariant_violations = st.violations;
  s.trace_hash = hash_hex(w.trace_hash());
  s.center = st.final_center;
  s.early_exit = st.early_exit;
  return s;
}

std::string summary_json(const RunSummary& s) {
  nlohmann::json j;
  j["z"] = s.z;
  j["s"] = s.s;
  j["steps"] = s.steps;
  j["sensing_steps"] = s.sensing_steps;
  j["iterations"] = s.iterations;
  j["nest_ok"] = s.nest_ok;
  j["invariant_violations"] = s.invariant_violations;
  j["trace_hash"] = s.trace_hash;
  j["center"] = {s.center.x, s.center.y};
  j["early_exit"] = s.early_exit;
  return j.dump();
}

std::string summary_human(const RunSummary& s) {
  std::ostringstream o;
  o << "z=" << s.z << " s=" << s.s << " steps=" << s.steps
    << " sensing_steps=" << s.sensing_steps << " iterations=" << s.iterations
    << " nest_ok=" << (s.nest_ok ? "true" : "false")
    << " invariant_violations=" << s.invariant_violations << " trace_hash=" << s.trace_hash
    << " center=" << cell_str(s.center) << " early_exit=" << (s.early_exit ? "true" : "false");
  return o.str();
}

int cmd_run(const std::string& instance_path, const RunFlags& flags, std::ostream& out,
            std::ostream& err) {
  InstanceSpec spec;
  try {
    spec = load_instance_file(instance_path);
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  RunSummary s;
  try {
    s = run_instance(spec, flags);
  } catch (const error& e) {
    err << "controller error: " << e.what() << "\n";
    return 3;
  }
  out << (flags.json ? summary_json(s) : summary_human(s)) << "\n";
  return s.nest_ok && s.invariant_violations == 0 ? 0 : 1;
}

int cmd_verify(const std::string& instance_path, const std::string& trace_path,
               std::ostream& out, std::ostream& err) {
  InstanceSpec spec;
  try {
    spec = load_instance_file(instance_path);
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  std::ifstream in(trace_path);
  if (!in) {
    err << "error: cannot open trace: " << trace_path << "\n";
    return 2;
  }
  ReplayResult res = replay_trace(in, &spec);
  bool final_nest = is_nest(res.final_state.field) && !res.final_state.carrying;
  out << "events=" << res.events << " moves=" << res.final_state.moves
      << " clean=" << (res.ok ? "true" : "false")
      << " final_nest=" << (final_nest ? "true" : "false") << "\n";
  for (const auto& i : res.issues)
    err << "violation at event " << i.index << ": " << i.message << "\n";
  return res.ok ? 0 : 1;
}

namespace {

struct ManifestEntry {
  std::string family;
  std::string label;
  InstanceSpec spec;
};

std::vector<ManifestEntry> parse_manifest(std::istream& in) {
  std::vector<ManifestEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    std::map<std::string, std::string> kv;
    std::string tok;
    while (ls >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos)
        throw parse_error(lineno, 1, "expected key=value, got '" + tok + "'");
      kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    ManifestEntry e;
    if (kind == "random") {
      int64_t z = std::stoll(kv.at("z"));
      uint64_t seed = std::stoull(kv.at("seed"));
      e.spec = gen_random_connected(z, seed);
      e.family = "random";
    } else if (kind == "rect") {
      int64_t z = std::stoll(kv.at("z"));
      int64_t sp = std::stoll(kv.at("sprime"));
      e.spec = gen_rough_rectangle(z, sp);
      e.family = "rect-" + kv.at("sprime");
    } else if (kind == "fixture") {
      e.spec = fixture(kv.at("name"));
      e.family = "fixture";
    } else if (kind == "file") {
      e.spec = load_instance_file(kv.at("path"));
      e.family = "file";
    } else {
      throw parse_error(lineno, 1, "unknown manifest entry '" + kind + "'");
    }
    if (kv.count("family")) e.family = kv.at("family");
    e.label = kv.count("label") ? kv.at("label") : e.spec.label;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

int cmd_bench(const std::string& manifest_path, const RunFlags& flags, std::ostream& out,
              std::ostream& err) {
  std::ifstream in(manifest_path);
  if (!in) {
    err << "error: cannot open manifest: " << manifest_path << "\n";
    return 2;
  }
  std::vector<ManifestEntry> entries;
  try {
    entries = parse_manifest(in);
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  out << "family\tlabel\tz\ts\tsteps\tratio\n";
  std::map<std::string, std::pair<double, double>> ratio_range;  // family -> (min, max)
  for (const auto& e : entries) {
    RunFlags f = flags;
    f.json = false;
    RunSummary s;
    try {
      s = run_instance(e.spec, f);
    } catch (const error& ex) {
      err << "controller error on " << e.label << ": " << ex.what() << "\n";
      return 3;
    }
    double denom = double(s.s) * double(s.z);
    double ratio = denom > 0 ? double(s.steps) / denom : 0.0;
    char rbuf[32];
    std::snprintf(rbuf, sizeof rbuf, "%.6f", ratio);
    out << e.family << "\t" << e.label << "\t" << s.z << "\t" << s.s << "\t" << s.steps
        << "\t" << rbuf << "\n";
    if (!s.nest_ok) {
      err << "error: " << e.label << " did not end as a nest\n";
      return 1;
    }
    auto it = ratio_range.find(e.family);
    if (it == ratio_range.end())
      ratio_range[e.family] = {ratio, ratio};
    else {
      it->second.first = std::min(it->second.first, ratio);
      it->second.second = std::max(it->second.second, ratio);
    }
  }
  for (const auto& [fam, mm] : ratio_range) {
    double spread = mm.first > 0 ? mm.second / mm.first : 0.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "# summary family=%s min=%.6f max=%.6f spread=%.3f",
                  fam.c_str(), mm.first, mm.second, spread);
    out << buf << "\n";
  }
  return 0;
}

int cmd_render(const std::string& trace_path, const RenderOptions& opt, std::ostream& out,
               std::ostream& err) {
  try {
    int n = render_trace(trace_path, opt);
    out << "frames=" << n << " outdir=" << opt.outdir << "\n";
    return 0;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace nest
