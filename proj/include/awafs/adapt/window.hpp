#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "awafs/sim/time.hpp"

namespace awafs::adapt {

using sim::SimTime;

struct CompletionRecord {
  SimTime ts;
  std::uint64_t size = 0;
};

/// Sizes of flows completed at one port, in completion-time order. New records
/// go to the tail; pruning drops from the head.
class CompletedFlowWindow {
 public:
  /// Appends at the tail. Throws std::invalid_argument if ts precedes the tail.
  void record(SimTime ts, std::uint64_t size);

  /// Drops every record with ts < now - span. Returns how many were dropped.
  std::size_t prune(SimTime now, SimTime span);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::deque<CompletionRecord>& entries() const { return entries_; }

  /// Copy of the in-scope sizes, in record order.
  std::vector<std::uint64_t> sizes() const;

  /// Number of records with ts >= now - span, without modifying the window.
  std::size_t count_within(SimTime now, SimTime span) const;

 private:
  std::deque<CompletionRecord> entries_;
};

/// Bytes per record on a switch: 4-byte size plus 8-byte double timestamp.
inline constexpr std::size_t kRecordFootprintBytes = 12;

constexpr std::size_t footprint_bytes(std::size_t entries) { return entries * kRecordFootprintBytes; }
inline std::size_t window_footprint(const CompletedFlowWindow& w) { return footprint_bytes(w.size()); }

/// Nearest-rank percentiles: for each p the element at 1-based index ceil(p*n)
/// of the ascending sort. Returns nullopt when `sizes` is empty.
std::optional<std::vector<std::uint64_t>> percentile_thresholds(std::span<const std::uint64_t> sizes,
                                                                std::span<const double> ref_pcts);

/// Nearest-rank index (1-based) for fraction p of n items.
std::size_t nearest_rank(double p, std::size_t n);

struct AdaptParams {
  SimTime w_update = SimTime::from_seconds(1.0);
  SimTime t_schedule = SimTime::from_ms(250);
  std::vector<double> ref_pcts;
  std::size_t min_samples = 0;
  std::vector<std::uint64_t> initial_thresholds;

  /// Throws std::invalid_argument naming the offending field.
  void validate(std::size_t queues) const;

  /// ref_pcts 0.1, 0.2, ... and min_samples 4*(k-1); initial thresholds are
  /// 7 KB steps.
  static AdaptParams defaults_for(std::size_t queues);

  friend bool operator==(const AdaptParams&, const AdaptParams&) = default;
};

}  // namespace awafs::adapt
