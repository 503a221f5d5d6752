#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pdemhe/errors.hpp"
#include "pdemhe/harness.hpp"
#include "pdemhe/scenario.hpp"

namespace fs = std::filesystem;
using namespace pdemhe;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_convergence = 3;
constexpr int exit_other = 1;

struct CommonArgs {
  std::string config_path;
  std::string preset_name;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_out = true) {
  auto* config = cmd->add_option("--config", args.config_path, "Scenario config file");
  auto* preset = cmd->add_option("--preset", args.preset_name, "Built-in preset name");
  config->excludes(preset);
  if (with_out) cmd->add_option("--out", args.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--seed", args.seed, "Override rng.seed");
  cmd->add_flag("--quiet", args.quiet, "Suppress progress and warnings");
}

ScenarioConfig resolve(const CommonArgs& args, const std::string& fallback_preset) {
  ScenarioConfig cfg;
  if (!args.config_path.empty()) {
    cfg = load_config(args.config_path);
  } else if (!args.preset_name.empty()) {
    cfg = preset(args.preset_name);
  } else if (!fallback_preset.empty()) {
    cfg = preset(fallback_preset);
  } else {
    throw ConfigError("one of --config or --preset is required");
  }
  if (args.seed) cfg.seed = *args.seed;
  cfg.validate();
  return cfg;
}

void say(const CommonArgs& args, const std::string& msg) {
  if (!args.quiet) std::cout << msg << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit moving-horizon estimators for hyperbolic and parabolic PDEs"};
  app.require_subcommand(1);

  CommonArgs args;
  std::size_t bench_steps = 2000;
  bool paper_scale = false;

  auto* kernel = app.add_subcommand("kernel", "Solve and export backstepping kernels and gains");
  add_common(kernel, args);
  auto* simulate = app.add_subcommand("simulate", "Simulate the plant only");
  add_common(simulate, args);
  auto* estimate = app.add_subcommand("estimate", "Run plant and moving-horizon estimator");
  add_common(estimate, args);
  auto* compare = app.add_subcommand("compare", "Compare the estimator with the PDE observer");
  add_common(compare, args);
  auto* fig1 = app.add_subcommand("fig1", "Run the reaction-diffusion reproduction preset");
  add_common(fig1, args);
  fig1->add_flag("--paper-scale", paper_scale, "Use the fine (slow) resolution");
  auto* bench = app.add_subcommand("bench", "Time estimator updates against observer steps");
  add_common(bench, args);
  bench->add_option("--steps", bench_steps, "Timed steps after the window fills")
      ->capture_default_str();
  auto* config = app.add_subcommand("config", "Print the canonical config of a scenario");
  add_common(config, args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  try {
    const fs::path out = args.out_dir;
    RunOptions run_opts{out, args.quiet};

    if (kernel->parsed()) {
      const ScenarioConfig cfg = resolve(args, "");
      export_kernels(cfg, out);
      say(args, "kernels written to " + out.string());
    } else if (simulate->parsed()) {
      const ScenarioConfig cfg = resolve(args, "");
      const double norm = simulate_plant(cfg, run_opts);
      say(args, "final ||u|| = " + std::to_string(norm) + ", plant.csv written to " + out.string());
    } else if (estimate->parsed() || fig1->parsed()) {
      const std::string fallback = fig1->parsed() ? (paper_scale ? "fig1-paper" : "fig1-desk") : "";
      const ScenarioConfig cfg = resolve(args, fallback);
      const RunSummary s = run_scenario(cfg, run_opts);
      say(args, "scenario " + s.scenario + ": final error " + std::to_string(s.final_error) +
                    ", engagement at t = " + std::to_string(s.engagement_time) + ", outputs in " +
                    out.string());
    } else if (compare->parsed()) {
      const ScenarioConfig cfg = resolve(args, "");
      const CompareReport report = compare_mhe_vs_observer(cfg);
      fs::create_directories(out);
      std::ofstream json(out / "compare.json");
      write_compare_json(report, json);
      if (!args.quiet) write_compare_json(report, std::cout);
    } else if (bench->parsed()) {
      const ScenarioConfig cfg = resolve(args, "");
      const BenchmarkReport report = benchmark_cost(cfg, bench_steps);
      fs::create_directories(out);
      std::ofstream json(out / "bench.json");
      write_benchmark_json(report, json);
      if (!args.quiet) write_benchmark_json(report, std::cout);
    } else if (config->parsed()) {
      std::cout << emit_config(resolve(args, ""));
    }
    return exit_ok;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return exit_config;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << '\n';
    return exit_convergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_other;
  }
}
