#include "awafs/sched/mlfq.hpp"

#include <algorithm>
#include <stdexcept>

#include "awafs/transport/ecn.hpp"

namespace awafs::sched {

std::size_t select_queue(std::uint64_t bytes_sent, std::span<const std::uint64_t> thresholds) {
  // Number of thresholds strictly below bytes_sent.
  auto it = std::lower_bound(thresholds.begin(), thresholds.end(), bytes_sent);
  return static_cast<std::size_t>(it - thresholds.begin()) + 1;
}

bool valid_thresholds(std::span<const std::uint64_t> thresholds, std::size_t queues) {
  if (queues < 2 || thresholds.size() != queues - 1) return false;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (thresholds[i] == 0) return false;
    if (i > 0 && thresholds[i] < thresholds[i - 1]) return false;
  }
  return true;
}

PortScheduler::PortScheduler(std::size_t queues, std::vector<std::uint64_t> thresholds, PortOptions options)
    : queues_(queues), thresholds_(std::move(thresholds)), options_(options) {
  if (queues < 2) throw std::invalid_argument("PortScheduler: need at least 2 queues");
  if (!valid_thresholds(thresholds_, queues)) {
    throw std::invalid_argument("PortScheduler: thresholds must be k-1 positive nondecreasing values");
  }
}

std::size_t PortScheduler::enqueue(Packet pkt, SimTime now) {
  std::size_t queue = 1;
  if (!pkt.is_ack) {
    if (!retired_order_.empty()) expire_retired(now);
    std::uint64_t bytes;
    if (auto r = retired_.find(pkt.flow_id); r != retired_.end()) {
      bytes = r->second + pkt.payload;
    } else {
      bytes = (flow_bytes_[pkt.flow_id] += pkt.payload);
    }
    queue = select_queue(bytes, thresholds_);
    if (pkt.flow_end_mark) {
      if (options_.sense_completions) window_.record(now, pkt.final_size);
      retire(pkt.flow_id, bytes, now);
    }
    if (options_.ecn_k_bytes && transport::ecn_mark_on_enqueue(backlog_bytes_, *options_.ecn_k_bytes, pkt)) {
      ++ecn_marks_;
    }
  }
  pkt.priority_tag = static_cast<std::uint8_t>(queue);
  backlog_bytes_ += pkt.size;
  ++packet_count_;
  queues_[queue - 1].push_back(pkt);
  return queue;
}

std::optional<Packet> PortScheduler::dequeue() {
  if (packet_count_ == 0) return std::nullopt;
  for (auto& q : queues_) {
    if (q.empty()) continue;
    Packet pkt = q.front();
    q.pop_front();
    backlog_bytes_ -= pkt.size;
    --packet_count_;
    return pkt;
  }
  return std::nullopt;
}

bool PortScheduler::set_thresholds(std::span<const std::uint64_t> thresholds) {
  if (!valid_thresholds(thresholds, queues_.size())) {
    ++rejected_updates_;
    return false;
  }
  thresholds_.assign(thresholds.begin(), thresholds.end());
  return true;
}

void PortScheduler::evict_flow(FlowId flow) { flow_bytes_.erase(flow); }

std::optional<std::uint64_t> PortScheduler::flow_bytes(FlowId flow) const {
  auto it = flow_bytes_.find(flow);
  if (it == flow_bytes_.end()) return std::nullopt;
  return it->second;
}

void PortScheduler::retire(FlowId flow, std::uint64_t bytes, SimTime now) {
  flow_bytes_.erase(flow);
  if (retired_.insert_or_assign(flow, bytes).second) retired_order_.emplace_back(now, flow);
}

void PortScheduler::expire_retired(SimTime now) {
  const SimTime cutoff = now - options_.retire_horizon;
  while (!retired_order_.empty() && retired_order_.front().first < cutoff) {
    retired_.erase(retired_order_.front().second);
    retired_order_.pop_front();
  }
}

}  // namespace awafs::sched
