// Command-line front end: single runs and parameter sweeps.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "hetsim/config.hpp"
#include "hetsim/engine.hpp"
#include "hetsim/errors.hpp"
#include "hetsim/report.hpp"
#include "hetsim/sweep.hpp"

namespace {

using namespace hetsim;

struct SimulateArgs {
  std::string config;
  std::optional<std::string> scenario;
  std::optional<std::string> scheduler;
  std::optional<int> users;
  std::optional<std::uint64_t> seed;
  std::optional<double> duration;
  std::string out;
  std::optional<int> workers;
  bool trace = false;
  bool no_wall_time = false;
};

struct SweepArgs {
  std::string config;
  std::string out;
  std::optional<int> workers;
  bool no_wall_time = false;
};

int cmd_simulate(const SimulateArgs& a) {
  LoadedConfig loaded = a.config.empty() ? parse_config("{}") : load_config(a.config);
  RunConfig cfg = loaded.run;
  if (a.scenario) cfg.scenario = parse_scenario(*a.scenario);
  if (a.scheduler) cfg.scheduler = parse_scheduler(*a.scheduler);
  if (a.users) cfg.users = *a.users;
  if (a.seed) cfg.seed = *a.seed;
  if (a.duration) {
    const double ratio = cfg.sim_duration_s / cfg.flow_duration_s;
    cfg.flow_duration_s = *a.duration;
    cfg.sim_duration_s = *a.duration * ratio;
  }
  if (a.workers) cfg.kernel_threads = *a.workers;
  if (a.trace) cfg.trace = true;
  if (a.no_wall_time) cfg.record_wall_time = false;
  cfg.validate();

  const RunResult result = run_simulation(cfg);
  const RunSummary summary = summarize(cfg, result);

  write_summary_header(std::cout);
  write_summary_row(std::cout, summary);

  if (!a.out.empty()) {
    const std::filesystem::path dir(a.out);
    std::filesystem::create_directories(dir);
    std::ofstream s(dir / "summary.csv");
    write_summary_header(s);
    write_summary_row(s, summary);
    std::ofstream g(dir / "geometry.csv");
    write_geometry_csv(g, result.cells);
    if (cfg.trace) {
      std::ofstream t(dir / "trace.csv");
      write_trace_csv(t, result.trace);
    }
  }
  return 0;
}

int cmd_sweep(const SweepArgs& a) {
  LoadedConfig loaded = load_config(a.config);
  if (a.workers) loaded.sweep.workers = *a.workers;
  if (a.no_wall_time) loaded.run.record_wall_time = false;
  loaded.sweep.validate();
  const auto rows = run_sweep(loaded.run, loaded.sweep, a.out);
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.error.empty() ? 0 : 1;
  std::cerr << rows.size() << " runs written to " << a.out << "/summary.csv";
  if (failed) std::cerr << " (" << failed << " failed, see failures.csv)";
  std::cerr << '\n';
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LTE downlink macro/pico system-level simulator"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run one simulation");
  simulate->add_option("--config", sim.config, "JSON config file");
  simulate->add_option("--scenario", sim.scenario, "macro | hetnet");
  simulate->add_option("--scheduler", sim.scheduler, "pf | mlwdf | exppf");
  simulate->add_option("--users", sim.users, "Users (per cell unless placement.mode=split)");
  simulate->add_option("--seed", sim.seed, "Root seed");
  simulate->add_option("--duration", sim.duration,
                       "Flow duration in seconds; simulation time keeps its ratio to it");
  simulate->add_option("--out", sim.out, "Output directory for CSVs");
  simulate->add_option("--workers", sim.workers, "Threads for the link kernel");
  simulate->add_flag("--trace", sim.trace, "Write a per-TTI trace.csv");
  simulate->add_flag("--no-wall-time", sim.no_wall_time, "Write wall_time_s as 0");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Run a users x scheduler x scenario x seed sweep");
  sweep->add_option("--config", sw.config, "JSON config file")->required();
  sweep->add_option("--out", sw.out, "Output directory")->required();
  sweep->add_option("--workers", sw.workers, "Concurrent runs");
  sweep->add_flag("--no-wall-time", sw.no_wall_time, "Write wall_time_s as 0");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(sim);
    if (sweep->parsed()) return cmd_sweep(sw);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
