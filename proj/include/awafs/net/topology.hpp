#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "awafs/net/packet.hpp"
#include "awafs/sched/mlfq.hpp"
#include "awafs/sim/random.hpp"
#include "awafs/sim/time.hpp"

namespace awafs::net {

using sim::SimTime;

struct TopologyConfig {
  std::uint32_t leaf_count = 4;
  std::uint32_t spine_count = 2;
  std::uint32_t hosts_per_leaf = 8;
  double downlink_bps = 1e9;
  double uplink_bps = 4e9;
  SimTime per_link_prop_delay;
  std::uint32_t queues_per_port = 8;

  /// Throws TopologyError naming the first invalid field.
  void validate() const;

  std::uint32_t host_count() const { return leaf_count * hosts_per_leaf; }

  /// 9 leaves x 4 spines x 16 hosts, 10/40 Gbps, 8 queues, 85.2 us base RTT.
  static TopologyConfig paper_scale();
  /// 4 leaves x 2 spines x 8 hosts, 1/4 Gbps, 8 queues, 85.2 us base RTT.
  static TopologyConfig desk_scale();

  friend bool operator==(const TopologyConfig&, const TopologyConfig&) = default;
};

class TopologyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr SimTime kPaperBaseRtt = SimTime::from_ns(85'200);

/// Unloaded round trip across the spine: an MSS data packet out over four
/// links and a minimum-size ACK back, store-and-forward, no host delay.
SimTime unloaded_rtt(const TopologyConfig& config, SimTime per_link_prop_delay);

/// Per-link propagation delay that makes unloaded_rtt equal `target`.
/// Throws TopologyError if serialization alone already exceeds the target.
SimTime calibrate_rtt(const TopologyConfig& config, SimTime target = kPaperBaseRtt);

enum class NodeKind : std::uint8_t { Host, Leaf, Spine };

using NodeId = std::uint32_t;
using PortId = std::uint32_t;

struct Link {
  NodeId from = 0;
  NodeId to = 0;
  double capacity_bps = 0;
  SimTime prop_delay;
};

/// One output port: a link plus its queueing discipline. Switch ports run an
/// MLFQ; host NICs are a single FIFO.
struct Port {
  Link link;
  std::optional<sched::PortScheduler> mlfq;
  std::deque<Packet> fifo;
  std::uint64_t fifo_bytes = 0;
  bool busy = false;

  bool is_switch_port() const { return mlfq.has_value(); }
  bool has_packets() const { return mlfq ? !mlfq->empty() : !fifo.empty(); }
};

struct PortSetup {
  std::vector<std::uint64_t> thresholds;
  sched::PortOptions access;  // switch ports running at downlink rate
  sched::PortOptions fabric;  // switch ports running at uplink rate
};

class Topology {
 public:
  static Topology build(const TopologyConfig& config, const PortSetup& setup);

  const TopologyConfig& config() const { return config_; }
  std::uint32_t host_count() const { return config_.host_count(); }
  std::uint32_t leaf_of(HostId host) const { return host / config_.hosts_per_leaf; }

  NodeKind kind(NodeId node) const;
  NodeId host_node(HostId h) const { return h; }
  NodeId leaf_node(std::uint32_t leaf) const { return host_count() + leaf; }
  NodeId spine_node(std::uint32_t spine) const { return host_count() + config_.leaf_count + spine; }
  std::uint32_t node_count() const { return host_count() + config_.leaf_count + config_.spine_count; }
  /// Index of a node within its kind (host id, leaf index or spine index).
  std::uint32_t local_index(NodeId node) const;

  PortId host_nic(HostId h) const { return h; }
  PortId leaf_downlink(std::uint32_t leaf, std::uint32_t slot) const;
  PortId leaf_uplink(std::uint32_t leaf, std::uint32_t spine) const;
  PortId spine_downlink(std::uint32_t spine, std::uint32_t leaf) const;

  std::vector<Port>& ports() { return ports_; }
  const std::vector<Port>& ports() const { return ports_; }
  Port& port(PortId id) { return ports_[id]; }
  const Port& port(PortId id) const { return ports_[id]; }

  /// Switch ports only, in port-id order.
  const std::vector<PortId>& switch_ports() const { return switch_ports_; }

  /// "leaf2"/"spine0" and the port index local to that switch.
  std::string switch_name(PortId id) const;
  std::uint32_t switch_port_index(PortId id) const;

  /// Output port a packet takes at `at`. Inter-leaf traffic sprays uniformly
  /// over the uplinks at the source leaf, independently per packet.
  PortId route_next_hop(const Packet& pkt, NodeId at, sim::Rng& rng) const;

 private:
  explicit Topology(const TopologyConfig& config) : config_(config) {}

  TopologyConfig config_;
  std::vector<Port> ports_;
  std::vector<PortId> switch_ports_;
};

}  // namespace awafs::net
