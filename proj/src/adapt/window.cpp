#include "awafs/adapt/window.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace awafs::adapt {

void CompletedFlowWindow::record(SimTime ts, std::uint64_t size) {
  if (!entries_.empty() && ts < entries_.back().ts) {
    throw std::invalid_argument("completion record out of time order");
  }
  entries_.push_back({ts, size});
}

std::size_t CompletedFlowWindow::prune(SimTime now, SimTime span) {
  const SimTime cutoff = now - span;
  std::size_t dropped = 0;
  while (!entries_.empty() && entries_.front().ts < cutoff) {
    entries_.pop_front();
    ++dropped;
  }
  return dropped;
}

std::vector<std::uint64_t> CompletedFlowWindow::sizes() const {
  std::vector<std::uint64_t> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.size);
  return out;
}

std::size_t CompletedFlowWindow::count_within(SimTime now, SimTime span) const {
  const SimTime cutoff = now - span;
  auto first = std::partition_point(entries_.begin(), entries_.end(),
                                    [&](const CompletionRecord& r) { return r.ts < cutoff; });
  return static_cast<std::size_t>(entries_.end() - first);
}

std::size_t nearest_rank(double p, std::size_t n) {
  // The epsilon keeps products like 0.7 * 10 = 7.000000000000001 at rank 7.
  auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n) - 1e-9));
  return std::clamp<std::size_t>(rank, 1, n);
}

std::optional<std::vector<std::uint64_t>> percentile_thresholds(std::span<const std::uint64_t> sizes,
                                                                std::span<const double> ref_pcts) {
  if (sizes.empty()) return std::nullopt;
  std::vector<std::uint64_t> sorted(sizes.begin(), sizes.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::uint64_t> out;
  out.reserve(ref_pcts.size());
  for (double p : ref_pcts) out.push_back(sorted[nearest_rank(p, sorted.size()) - 1]);
  return out;
}

void AdaptParams::validate(std::size_t queues) const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument("adapt." + field + ": " + why);
  };
  if (queues < 2) fail("queues", "need at least 2 queues");
  if (t_schedule <= SimTime{}) fail("t_schedule", "must be positive");
  if (w_update < t_schedule) fail("w_update", "must be >= t_schedule");
  if (ref_pcts.size() != queues - 1) fail("ref_pcts", "need exactly queues-1 values");
  for (std::size_t i = 0; i < ref_pcts.size(); ++i) {
    if (!(ref_pcts[i] > 0.0 && ref_pcts[i] < 1.0)) fail("ref_pcts", "values must lie in (0,1)");
    if (i > 0 && !(ref_pcts[i] > ref_pcts[i - 1])) fail("ref_pcts", "must be strictly increasing");
  }
  if (min_samples < queues - 1) fail("min_samples", "must be >= queues-1");
  if (initial_thresholds.size() != queues - 1) fail("initial_thresholds", "need exactly queues-1 values");
  for (std::size_t i = 0; i < initial_thresholds.size(); ++i) {
    if (initial_thresholds[i] == 0) fail("initial_thresholds", "must be positive");
    if (i > 0 && initial_thresholds[i] < initial_thresholds[i - 1]) {
      fail("initial_thresholds", "must be nondecreasing");
    }
  }
}

AdaptParams AdaptParams::defaults_for(std::size_t queues) {
  AdaptParams p;
  const std::size_t n = queues > 1 ? queues - 1 : 0;
  for (std::size_t i = 0; i < n; ++i) {
    p.ref_pcts.push_back(static_cast<double>(i + 1) / 10.0);
    p.initial_thresholds.push_back(7000 * (i + 1));
  }
  p.min_samples = 4 * n;
  return p;
}

}  // namespace awafs::adapt
