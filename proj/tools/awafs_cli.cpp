// Command-line entry point: runs scenario presets or config files and writes
// per-run CSVs, aggregates and a summary table.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "awafs/harness/config.hpp"
#include "awafs/harness/runner.hpp"

using namespace awafs;
using harness::ConfigError;
using harness::ScenarioConfig;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

struct Overrides {
  std::string scenario;
  int variant = 1;
  std::string config;
  std::optional<double> load;
  std::optional<std::uint64_t> flows;
  std::optional<double> duration;
  std::optional<std::uint32_t> queues;
  std::string scheduler;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> reps;
  std::string out;
};

void add_scenario_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--scenario", o.scenario,
                  "Preset: overhead, convergence, mismatch-comparison, heterogeneous, custom");
  cmd->add_option("--variant", o.variant, "Mismatch-comparison pairing 1-4")->check(CLI::Range(1, 4));
  cmd->add_option("--config", o.config, "Scenario config file (INI)");
  cmd->add_option("--load", o.load, "Offered load per access link, in (0,1)");
  cmd->add_option("--flows", o.flows, "Generate this many flows");
  cmd->add_option("--duration", o.duration, "Generate flows for this many seconds");
  cmd->add_option("--queues", o.queues, "Priority queues per switch port");
  cmd->add_option("--scheduler", o.scheduler, "awafs, static or both");
  cmd->add_option("--seed", o.seed, "Base seed; repetition i uses seed+i");
  cmd->add_option("--reps", o.reps, "Repetitions");
  cmd->add_option("--out", o.out, "Output directory");
}

ScenarioConfig resolve(const Overrides& o) {
  ScenarioConfig c;
  if (!o.config.empty()) {
    c = harness::load_config(o.config);
    if (!o.scenario.empty() && o.scenario != harness::to_string(c.kind)) {
      throw ConfigError("--scenario: conflicts with the kind in " + o.config);
    }
  } else {
    c = harness::scenario_preset(harness::scenario_from_string(o.scenario.empty() ? "custom" : o.scenario), o.variant);
  }
  if (o.queues) harness::set_queue_count(c, *o.queues);
  if (o.load) c.traffic.load = *o.load;
  if (o.flows && o.duration) throw ConfigError("--flows: cannot be combined with --duration");
  if (o.flows) {
    c.traffic.flow_count = *o.flows;
    c.traffic.duration.reset();
  }
  if (o.duration) {
    if (*o.duration <= 0) throw ConfigError("--duration: must be positive");
    c.traffic.duration = sim::SimTime::from_seconds(*o.duration);
    c.traffic.flow_count.reset();
  }
  if (!o.scheduler.empty()) {
    if (o.scheduler == "both") {
      c.schedulers = {harness::SchedulerKind::Awafs, harness::SchedulerKind::Static};
    } else {
      try {
        c.schedulers = {harness::scheduler_from_string(o.scheduler)};
      } catch (const std::exception&) {
        throw ConfigError("--scheduler: expected awafs, static or both");
      }
    }
  }
  if (o.seed) c.seed = *o.seed;
  if (o.reps) c.reps = *o.reps;
  if (!o.out.empty()) c.out_dir = o.out;
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leaf-spine packet simulator with adaptive MLFQ flow scheduling"};
  app.require_subcommand(1);

  Overrides run_opts;
  unsigned jobs = 1;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run a scenario and write its artifacts");
  add_scenario_options(run, run_opts);
  run->add_option("--jobs", jobs, "Repetitions simulated concurrently")->check(CLI::PositiveNumber);
  run->add_flag("--quiet", quiet, "Only print the summary table");

  Overrides show_opts;
  auto* show = app.add_subcommand("config", "Print the resolved scenario config");
  add_scenario_options(show, show_opts);

  std::string workload;
  std::size_t k = 8;
  auto* derive = app.add_subcommand("derive-thresholds", "Print equal-probability static thresholds of a workload");
  derive->add_option("--workload", workload, "Workload name or .cdf path")->required();
  derive->add_option("--queues", k, "Priority queues")->check(CLI::Range(2, 64));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    if (*derive) {
      const auto cdf = harness::load_workload(AWAFS_DATA_DIR, workload);
      const auto thr = harness::derive_static_thresholds(cdf, k);
      for (std::size_t i = 0; i < thr.size(); ++i) std::cout << (i ? "," : "") << thr[i];
      std::cout << "\n";
      return kOk;
    }
    if (*show) {
      harness::write_config(std::cout, resolve(show_opts));
      return kOk;
    }
    const ScenarioConfig c = resolve(run_opts);
    harness::RunnerOptions opts;
    opts.jobs = jobs;
    if (!quiet) {
      opts.log = &std::cout;
      std::cout << "scenario " << c.name << ": " << c.reps << " repetition(s), output " << (c.out_dir / c.name).string()
                << "\n";
    }
    const auto result = harness::run_scenario(c, opts);
    harness::print_summary(std::cout, result);
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const workload::CdfError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}
