#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "awafs/sim/time.hpp"
#include "awafs/transport/dctcp.hpp"
#include "awafs/workload/cdf.hpp"

namespace awafs::workload {

using sim::SimTime;
using transport::FlowSpec;

enum class Pairing { Uniform, HeterogeneousIJ };

const char* to_string(Pairing p);
Pairing pairing_from_string(const std::string& s);

struct Phase {
  SimTime start;
  std::string workload;

  friend bool operator==(const Phase&, const Phase&) = default;
};

struct TrafficPlan {
  // Exactly one of these bounds generation.
  std::optional<SimTime> duration;
  std::optional<std::uint64_t> flow_count;
  double load = 0.8;
  Pairing pairing = Pairing::Uniform;
  // Active workload by start time; the first phase starts at 0. Under
  // HeterogeneousIJ the phase workload drives pairs with src < dst and
  // `alternate_workload` all others.
  std::vector<Phase> phases;
  std::string alternate_workload;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  /// Every workload name the plan refers to.
  std::vector<std::string> workloads() const;

  friend bool operator==(const TrafficPlan&, const TrafficPlan&) = default;
};

using WorkloadSet = std::map<std::string, WorkloadCdf>;

/// Flows per second one host must receive so that its downlink carries
/// `load` of `access_capacity_bps`.
double arrival_rate(double load, double access_capacity_bps, double mean_bytes);

/// Draws the flows of a plan. Every destination host runs its own Poisson
/// process; per arrival the draws are, in order: interarrival gap, source,
/// size quantile. Flow ids follow global start-time order.
std::vector<FlowSpec> generate(const TrafficPlan& plan, const WorkloadSet& workloads, std::uint32_t hosts,
                               double access_capacity_bps, std::uint64_t seed);

/// Workload a (src, dst) pair uses during `phase` under the given pairing.
const std::string& workload_for_pair(const TrafficPlan& plan, std::size_t phase, std::uint32_t src,
                                     std::uint32_t dst);

}  // namespace awafs::workload
