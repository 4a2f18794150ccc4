#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "awafs/net/packet.hpp"
#include "awafs/sim/time.hpp"

namespace awafs::metrics {

using sim::SimTime;

enum class FlowClass { Small, Medium, Large };

inline constexpr std::uint64_t kSmallLimitBytes = 100'000;
inline constexpr std::uint64_t kMediumLimitBytes = 10'000'000;

/// Small up to 100 KB, Medium up to 10 MB, Large beyond (KB = 1000 B).
FlowClass classify(std::uint64_t size);
const char* to_string(FlowClass c);

struct Summary {
  double mean = 0;
  double p99 = 0;
  std::size_t count = 0;
};

/// Arithmetic mean and nearest-rank 99th percentile; nullopt without samples.
std::optional<Summary> summarize(std::span<const double> samples, double tail_pct = 0.99);

enum class CiMethod { Normal, StudentT };

struct Interval {
  double mean = 0;
  double half_width = 0;
};

/// 95% confidence interval of the mean over per-repetition values. Normal
/// uses 1.96 s / sqrt(n); StudentT the t quantile with n-1 degrees of freedom.
/// nullopt with fewer than two values.
std::optional<Interval> ci95(std::span<const double> run_means, CiMethod method = CiMethod::Normal);

struct FlowRecord {
  net::FlowId flow_id = 0;
  net::HostId src = 0;
  net::HostId dst = 0;
  std::uint64_t size = 0;
  SimTime start;
  std::optional<SimTime> fct;
  std::uint32_t timeouts = 0;
  std::uint8_t max_queue = 0;
};

struct ThresholdSample {
  SimTime time;
  std::string switch_name;
  std::uint32_t port = 0;
  std::uint32_t thr_index = 0;  // 1-based, Thr_1 .. Thr_{k-1}
  std::uint64_t bytes = 0;
};

struct ClassStats {
  std::optional<Summary> fct;
  std::uint64_t flows = 0;
  std::uint64_t completed = 0;
  std::uint64_t timeouts = 0;
};

struct RunAggregates {
  ClassStats small, medium, large, overall;
  const ClassStats& of(FlowClass c) const;
};

struct SummaryKey {
  std::string scenario;
  double load = 0;
  std::string scheduler;
};

class MetricsLedger {
 public:
  void add_flow(FlowRecord r) { flows_.push_back(std::move(r)); }
  void add_threshold(ThresholdSample s) { trajectory_.push_back(std::move(s)); }
  void add_window_sample(double mean_entries, std::size_t max_entries);

  const std::vector<FlowRecord>& flows() const { return flows_; }
  std::vector<FlowRecord>& flows() { return flows_; }
  const std::vector<ThresholdSample>& trajectory() const { return trajectory_; }

  double mean_window_entries() const;
  std::size_t max_window_entries() const { return max_window_entries_; }
  std::size_t window_samples() const { return window_samples_; }

  /// Statistics over flows that started at or after `warmup`.
  RunAggregates aggregate(SimTime warmup, double tail_pct = 0.99) const;

 private:
  std::vector<FlowRecord> flows_;
  std::vector<ThresholdSample> trajectory_;
  double window_entries_sum_ = 0;
  std::size_t window_samples_ = 0;
  std::size_t max_window_entries_ = 0;
};

/// RunAggregates recomputed from a list of records (used by the CSV readers).
RunAggregates aggregate_records(std::span<const FlowRecord> flows, SimTime warmup, double tail_pct = 0.99);

// CSV writers. Column order is fixed; seconds carry 9 decimals.
void write_flows_csv(std::ostream& out, std::span<const FlowRecord> flows);
void write_summary_csv(std::ostream& out, const SummaryKey& key, const RunAggregates& agg);
void write_trajectory_csv(std::ostream& out, std::span<const ThresholdSample> samples);

std::vector<FlowRecord> read_flows_csv(std::istream& in);

struct EmitPaths {
  std::filesystem::path flows;
  std::filesystem::path summary;
  std::filesystem::path trajectory;
};

/// Writes flows.csv, summary.csv and thresholds.csv into `dir` (created if
/// needed). Throws std::runtime_error naming the path on I/O failure.
EmitPaths emit(const MetricsLedger& ledger, const SummaryKey& key, SimTime warmup,
               const std::filesystem::path& dir, double tail_pct = 0.99);

std::string format_seconds(SimTime t);
std::string format_number(double v, int decimals = 9);

}  // namespace awafs::metrics
