#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nest/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"nest: single-robot brick gathering on the grid"};
  app.require_subcommand(1);

  // run
  std::string instance_path, trace_path;
  std::string monitors = "on";
  int sensing_cost = 0;
  bool json = false;
  auto* run = app.add_subcommand("run", "run the gathering algorithm on an instance");
  run->add_option("instance", instance_path, "instance file")->required();
  run->add_option("--trace", trace_path, "write the event trace to this file");
  run->add_option("--monitors", monitors, "runtime invariant monitors: on|off")
      ->check(CLI::IsMember({"on", "off"}));
  run->add_option("--sensing-cost", sensing_cost, "cost charged per observation");
  run->add_flag("--json", json, "machine-readable summary");

  // verify
  std::string v_instance, v_trace;
  auto* verify = app.add_subcommand("verify", "independently replay and check a trace");
  verify->add_option("instance", v_instance, "instance file")->required();
  verify->add_option("trace", v_trace, "trace file")->required();

  // bench
  std::string manifest;
  auto* bench = app.add_subcommand("bench", "run a manifest of instances, report step ratios");
  bench->add_option("manifest", manifest, "manifest file")->required();

  // render
  std::string r_trace;
  nest::RenderOptions ropt;
  auto* render = app.add_subcommand("render", "write snapshot frames from a trace");
  render->add_option("trace", r_trace, "trace file")->required();
  render->add_option("--every", ropt.every, "events per frame (0: initial and final only)");
  render->add_option("--format", ropt.format, "ascii|svg")
      ->check(CLI::IsMember({"ascii", "svg"}));
  render->add_option("--outdir", ropt.outdir, "output directory");

  // gen
  std::string g_kind, g_out = "-", g_name = "plus";
  int64_t g_z = 20, g_sprime = 10;
  uint64_t g_seed = 1;
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  gen->add_option("kind", g_kind, "random|rect|fixture")->required();
  gen->add_option("--z", g_z, "number of bricks");
  gen->add_option("--seed", g_seed, "random seed");
  gen->add_option("--sprime", g_sprime, "target span parameter");
  gen->add_option("--name", g_name, "fixture name");
  gen->add_option("-o,--out", g_out, "output path (- for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      nest::RunFlags flags;
      flags.trace_path = trace_path;
      flags.monitors = monitors == "on";
      flags.sensing_cost = sensing_cost;
      flags.json = json;
      return nest::cmd_run(instance_path, flags, std::cout, std::cerr);
    }
    if (verify->parsed()) return nest::cmd_verify(v_instance, v_trace, std::cout, std::cerr);
    if (bench->parsed()) {
      nest::RunFlags flags;
      flags.monitors = false;
      return nest::cmd_bench(manifest, flags, std::cout, std::cerr);
    }
    if (render->parsed()) return nest::cmd_render(r_trace, ropt, std::cout, std::cerr);
    if (gen->parsed()) {
      nest::InstanceSpec spec;
      if (g_kind == "random")
        spec = nest::gen_random_connected(g_z, g_seed);
      else if (g_kind == "rect")
        spec = nest::gen_rough_rectangle(g_z, g_sprime);
      else if (g_kind == "fixture")
        spec = nest::fixture(g_name);
      else {
        std::cerr << "error: unknown generator kind '" << g_kind << "'\n";
        return 2;
      }
      std::string text = nest::serialize_instance(spec);
      if (g_out == "-")
        std::cout << text;
      else
        nest::save_instance_file(spec, g_out);
      return 0;
    }
  } catch (const nest::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
