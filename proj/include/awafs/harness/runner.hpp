#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "awafs/harness/config.hpp"
#include "awafs/metrics/metrics.hpp"

namespace awafs::harness {

struct RunResult {
  std::string label;  // scenario label used in outputs
  SchedulerKind scheduler = SchedulerKind::Awafs;
  std::uint64_t seed = 0;
  SimTime window;  // observation window in effect (AWAFS)
  metrics::MetricsLedger ledger;
  metrics::RunAggregates aggregates;
  std::uint64_t events = 0;
  std::uint64_t adapt_ticks = 0;
  std::size_t flows = 0;
  std::size_t completed = 0;
  std::filesystem::path dir;
};

struct ScenarioResult {
  ScenarioConfig config;
  std::vector<RunResult> runs;

  /// Runs of one scheduler (and, for the overhead sweep, one window).
  std::vector<const RunResult*> select(SchedulerKind s, std::optional<SimTime> window = std::nullopt) const;
};

struct RunnerOptions {
  bool write_outputs = true;
  unsigned jobs = 1;
  std::ostream* log = nullptr;
};

/// Flows of one repetition; identical for every scheduler at a given seed.
std::vector<transport::FlowSpec> scenario_flows(const ScenarioConfig& c, const workload::WorkloadSet& workloads,
                                                std::uint64_t seed);

/// Label of the outputs of one run: the scenario name, suffixed with the
/// window length in the overhead sweep.
std::string run_label(const ScenarioConfig& c, std::optional<SimTime> window);

/// Config describing exactly one run, as written to its manifest.
ScenarioConfig run_manifest(const ScenarioConfig& c, SchedulerKind s, std::uint64_t seed,
                            std::optional<SimTime> window);

RunResult run_once(const ScenarioConfig& c, SchedulerKind s, std::uint64_t seed, const workload::WorkloadSet& workloads,
                   std::optional<SimTime> window = std::nullopt);

/// Runs every repetition (seeds base+i) of every selected scheduler and, for
/// the overhead scenario, every window length. Writes per-run directories
/// `<out>/<label>/<scheduler>/run-<seed>/` plus aggregate files when
/// write_outputs is set.
ScenarioResult run_scenario(const ScenarioConfig& c, const RunnerOptions& opts = {});

struct MetricInterval {
  double mean = 0;
  std::optional<double> half_width;
  std::size_t runs = 0;
};

/// Across-repetition interval of one per-class metric ("mean_fct",
/// "p99_fct", "timeouts", "completed", "flows"); nullopt when no run has it.
std::optional<MetricInterval> across_runs(const std::vector<const RunResult*>& runs, metrics::FlowClass cls,
                                          const std::string& metric, metrics::CiMethod ci);
std::optional<MetricInterval> across_runs_overall(const std::vector<const RunResult*>& runs, const std::string& metric,
                                                  metrics::CiMethod ci);

void write_aggregate_csv(std::ostream& out, const ScenarioResult& r, const std::string& label,
                         const std::vector<const RunResult*>& runs);
void write_comparison_csv(std::ostream& out, const ScenarioResult& r);
void write_overhead_csv(std::ostream& out, const ScenarioResult& r);

void print_summary(std::ostream& out, const ScenarioResult& r);

}  // namespace awafs::harness
