#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "awafs/adapt/window.hpp"
#include "awafs/net/packet.hpp"
#include "awafs/sim/time.hpp"

namespace awafs::sched {

using net::FlowId;
using net::Packet;
using sim::SimTime;

/// Queue index (1-based) for a flow that has forwarded `bytes_sent` bytes,
/// counting the packet being classified. A flow that has sent more than Thr_i
/// goes to Q_{i+1}; exactly Thr_i stays in Q_i.
std::size_t select_queue(std::uint64_t bytes_sent, std::span<const std::uint64_t> thresholds);

/// k-1 values, each positive, nondecreasing.
bool valid_thresholds(std::span<const std::uint64_t> thresholds, std::size_t queues);

struct PortOptions {
  // ECN marking threshold on total port backlog; nullopt disables marking.
  std::optional<std::uint64_t> ecn_k_bytes;
  // Record completions into the window (the AWAFS sensor).
  bool sense_completions = false;
  // How long a retired flow is remembered so that stragglers reordered behind
  // its end-marked packet are classified with the right byte count.
  SimTime retire_horizon = SimTime::from_ms(200);
};

/// Multi-level feedback queue of one output port: k strict-priority FIFO
/// queues, demotion by bytes forwarded per flow.
class PortScheduler {
 public:
  PortScheduler(std::size_t queues, std::vector<std::uint64_t> thresholds, PortOptions options = {});

  /// Classifies and queues the packet. Data packets advance the flow's byte
  /// counter first and are compared against the thresholds afterwards; ACKs
  /// always go to Q1. Returns the 1-based queue index.
  std::size_t enqueue(Packet pkt, SimTime now);

  /// Head of the highest-priority nonempty queue.
  std::optional<Packet> dequeue();

  /// Rejects malformed vectors (keeping the previous thresholds) and counts a
  /// warning. Already queued packets stay where they are.
  bool set_thresholds(std::span<const std::uint64_t> thresholds);

  /// Drops the flow's byte counter; unknown flows are ignored.
  void evict_flow(FlowId flow);

  std::size_t queue_count() const { return queues_.size(); }
  const std::vector<std::uint64_t>& thresholds() const { return thresholds_; }
  std::size_t queue_length(std::size_t queue) const { return queues_.at(queue - 1).size(); }
  std::uint64_t backlog_bytes() const { return backlog_bytes_; }
  std::size_t packet_count() const { return packet_count_; }
  bool empty() const { return packet_count_ == 0; }

  std::optional<std::uint64_t> flow_bytes(FlowId flow) const;
  std::size_t tracked_flows() const { return flow_bytes_.size(); }

  adapt::CompletedFlowWindow& window() { return window_; }
  const adapt::CompletedFlowWindow& window() const { return window_; }

  std::uint64_t rejected_threshold_updates() const { return rejected_updates_; }
  std::uint64_t ecn_marks() const { return ecn_marks_; }

 private:
  void retire(FlowId flow, std::uint64_t bytes, SimTime now);
  void expire_retired(SimTime now);

  std::vector<std::deque<Packet>> queues_;
  std::vector<std::uint64_t> thresholds_;
  PortOptions options_;
  std::unordered_map<FlowId, std::uint64_t> flow_bytes_;
  std::unordered_map<FlowId, std::uint64_t> retired_;
  std::deque<std::pair<SimTime, FlowId>> retired_order_;
  adapt::CompletedFlowWindow window_;
  std::uint64_t backlog_bytes_ = 0;
  std::size_t packet_count_ = 0;
  std::uint64_t rejected_updates_ = 0;
  std::uint64_t ecn_marks_ = 0;
};

}  // namespace awafs::sched
