#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "awafs/adapt/window.hpp"
#include "awafs/harness/simulation.hpp"
#include "awafs/metrics/metrics.hpp"
#include "awafs/net/topology.hpp"
#include "awafs/transport/dctcp.hpp"
#include "awafs/workload/cdf.hpp"
#include "awafs/workload/generator.hpp"

namespace awafs::harness {

enum class ScenarioKind { Overhead, Convergence, MismatchComparison, Heterogeneous, Custom };

const char* to_string(ScenarioKind k);
ScenarioKind scenario_from_string(const std::string& s);

/// Invalid or inconsistent configuration. The message starts with the
/// offending "section.field".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Custom;
  std::string name = "custom";

  net::TopologyConfig topology = net::TopologyConfig::desk_scale();
  // When set, the per-link propagation delay is recalibrated so the
  // unloaded cross-spine RTT equals this value.
  std::optional<SimTime> target_rtt = net::kPaperBaseRtt;

  transport::TransportParams transport;

  std::vector<SchedulerKind> schedulers{SchedulerKind::Awafs};
  std::vector<std::uint64_t> static_thresholds;
  // Workload the static thresholds are derived from; filled in by
  // resolve_thresholds when the explicit vector is empty.
  std::string thresholds_from;
  adapt::AdaptParams adapt = adapt::AdaptParams::defaults_for(8);

  workload::TrafficPlan traffic;
  // Directory searched for "<workload>.cdf".
  std::filesystem::path cdf_dir = AWAFS_DATA_DIR;

  // Hard stop of every run; without it runs last until all flows finish.
  std::optional<SimTime> end_time;
  SimTime warmup;
  SimTime stats_interval = SimTime::from_ms(50);
  // Overhead scenario: one run per observation-window length.
  std::vector<SimTime> window_sweep;

  std::uint64_t seed = 1;
  std::uint32_t reps = 1;
  std::filesystem::path out_dir = "out";
  double tail_pct = 0.99;
  metrics::CiMethod ci = metrics::CiMethod::Normal;

  /// Throws ConfigError naming the first offending field.
  void validate() const;

  bool runs(SchedulerKind s) const;

  /// SimulationConfig for one run.
  SimulationConfig simulation(SchedulerKind s, std::uint64_t run_seed) const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// INI-style file with [scenario], [topology], [transport], [scheduler],
// [adapt] and [traffic] sections. Unknown keys are rejected.
ScenarioConfig read_config(std::istream& in, const std::string& origin = "<config>");
ScenarioConfig load_config(const std::filesystem::path& path);
void write_config(std::ostream& out, const ScenarioConfig& c);
std::string to_ini(const ScenarioConfig& c);

/// Loads every workload the scenario refers to. Names containing a path
/// separator or ending in ".cdf" are read as files; others from cdf_dir.
workload::WorkloadSet load_workloads(const ScenarioConfig& c);
workload::WorkloadCdf load_workload(const std::filesystem::path& cdf_dir, const std::string& name);

/// k-1 thresholds splitting flows into k equal-probability bands: the
/// quantiles at j/k, rounded up to whole bytes.
std::vector<std::uint64_t> derive_static_thresholds(const workload::WorkloadCdf& cdf, std::size_t k);

/// Derives static_thresholds from thresholds_from when only the latter is
/// given.
void resolve_thresholds(ScenarioConfig& c);

/// Changes the queue count, re-deriving the static thresholds (when a source
/// workload is named) and resetting the adapt vectors to the defaults for k.
/// AWAFS starts from the static thresholds when they exist.
void set_queue_count(ScenarioConfig& c, std::uint32_t k);

/// Desk-scale presets. `variant` selects the mismatch-comparison pairing
/// (1: Web Search traffic / Data Mining thresholds, 2: Data Mining / Web
/// Search, 3: Cache / Data Mining, 4: Hadoop / Data Mining); other kinds
/// ignore it.
ScenarioConfig scenario_preset(ScenarioKind kind, int variant = 1,
                               const std::filesystem::path& cdf_dir = AWAFS_DATA_DIR);

}  // namespace awafs::harness
