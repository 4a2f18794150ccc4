#include "awafs/net/topology.hpp"

namespace awafs::net {

namespace {

void require(bool ok, const char* field, const char* why) {
  if (!ok) throw TopologyError(std::string("topology.") + field + ": " + why);
}

}  // namespace

void TopologyConfig::validate() const {
  require(leaf_count >= 1, "leaf_count", "must be >= 1");
  require(spine_count >= 1, "spine_count", "must be >= 1");
  require(hosts_per_leaf >= 2, "hosts_per_leaf", "must be >= 2");
  require(downlink_bps > 0, "downlink_bps", "must be > 0");
  require(uplink_bps > 0, "uplink_bps", "must be > 0");
  require(per_link_prop_delay >= SimTime{}, "per_link_prop_delay", "must be >= 0");
  require(queues_per_port >= 2, "queues_per_port", "must be >= 2");
}

TopologyConfig TopologyConfig::paper_scale() {
  TopologyConfig c;
  c.leaf_count = 9;
  c.spine_count = 4;
  c.hosts_per_leaf = 16;
  c.downlink_bps = 10e9;
  c.uplink_bps = 40e9;
  c.queues_per_port = 8;
  c.per_link_prop_delay = calibrate_rtt(c);
  return c;
}

TopologyConfig TopologyConfig::desk_scale() {
  TopologyConfig c;
  c.per_link_prop_delay = calibrate_rtt(c);
  return c;
}

SimTime unloaded_rtt(const TopologyConfig& c, SimTime prop) {
  const double rates[] = {c.downlink_bps, c.uplink_bps, c.uplink_bps, c.downlink_bps};
  SimTime total;
  for (double bps : rates) {
    total += sim::serialization_time(kDataPacketBytes, bps);
    total += sim::serialization_time(kAckBytes, bps);
  }
  for (int i = 0; i < 8; ++i) total += prop;
  return total;
}

SimTime calibrate_rtt(const TopologyConfig& c, SimTime target) {
  const SimTime serialization = unloaded_rtt(c, SimTime{});
  if (serialization > target) {
    throw TopologyError("topology.per_link_prop_delay: serialization alone (" +
                        std::to_string(serialization.ns()) + " ns) exceeds the RTT target");
  }
  return SimTime::from_ns((target - serialization).ns() / 8);
}

Topology Topology::build(const TopologyConfig& config, const PortSetup& setup) {
  config.validate();
  Topology t(config);
  const std::uint32_t hosts = config.host_count();
  const std::uint32_t k = config.queues_per_port;
  auto& ports = t.ports_;
  ports.reserve(hosts * 2 + 2 * config.leaf_count * config.spine_count);

  auto add_switch_port = [&](NodeId from, NodeId to, double bps, const sched::PortOptions& opts) {
    Port p;
    p.link = Link{from, to, bps, config.per_link_prop_delay};
    p.mlfq.emplace(k, setup.thresholds, opts);
    t.switch_ports_.push_back(static_cast<PortId>(ports.size()));
    ports.push_back(std::move(p));
  };

  // Layout: host NICs, then per leaf its downlinks followed by its uplinks,
  // then per spine its downlinks. The accessor arithmetic relies on it.
  for (HostId h = 0; h < hosts; ++h) {
    Port p;
    p.link = Link{t.host_node(h), t.leaf_node(t.leaf_of(h)), config.downlink_bps, config.per_link_prop_delay};
    ports.push_back(std::move(p));
  }
  for (std::uint32_t l = 0; l < config.leaf_count; ++l) {
    for (std::uint32_t i = 0; i < config.hosts_per_leaf; ++i) {
      add_switch_port(t.leaf_node(l), t.host_node(l * config.hosts_per_leaf + i), config.downlink_bps,
                      setup.access);
    }
    for (std::uint32_t s = 0; s < config.spine_count; ++s) {
      add_switch_port(t.leaf_node(l), t.spine_node(s), config.uplink_bps, setup.fabric);
    }
  }
  for (std::uint32_t s = 0; s < config.spine_count; ++s) {
    for (std::uint32_t l = 0; l < config.leaf_count; ++l) {
      add_switch_port(t.spine_node(s), t.leaf_node(l), config.uplink_bps, setup.fabric);
    }
  }
  return t;
}

NodeKind Topology::kind(NodeId node) const {
  if (node < host_count()) return NodeKind::Host;
  if (node < host_count() + config_.leaf_count) return NodeKind::Leaf;
  return NodeKind::Spine;
}

std::uint32_t Topology::local_index(NodeId node) const {
  switch (kind(node)) {
    case NodeKind::Host:
      return node;
    case NodeKind::Leaf:
      return node - host_count();
    case NodeKind::Spine:
      return node - host_count() - config_.leaf_count;
  }
  return 0;
}

PortId Topology::leaf_downlink(std::uint32_t leaf, std::uint32_t slot) const {
  const std::uint32_t per_leaf = config_.hosts_per_leaf + config_.spine_count;
  return host_count() + leaf * per_leaf + slot;
}

PortId Topology::leaf_uplink(std::uint32_t leaf, std::uint32_t spine) const {
  const std::uint32_t per_leaf = config_.hosts_per_leaf + config_.spine_count;
  return host_count() + leaf * per_leaf + config_.hosts_per_leaf + spine;
}

PortId Topology::spine_downlink(std::uint32_t spine, std::uint32_t leaf) const {
  const std::uint32_t per_leaf = config_.hosts_per_leaf + config_.spine_count;
  return host_count() + config_.leaf_count * per_leaf + spine * config_.leaf_count + leaf;
}

std::string Topology::switch_name(PortId id) const {
  const NodeId owner = ports_.at(id).link.from;
  switch (kind(owner)) {
    case NodeKind::Leaf:
      return "leaf" + std::to_string(local_index(owner));
    case NodeKind::Spine:
      return "spine" + std::to_string(local_index(owner));
    case NodeKind::Host:
      break;
  }
  return "host" + std::to_string(owner);
}

std::uint32_t Topology::switch_port_index(PortId id) const {
  const NodeId owner = ports_.at(id).link.from;
  const std::uint32_t per_leaf = config_.hosts_per_leaf + config_.spine_count;
  switch (kind(owner)) {
    case NodeKind::Leaf:
      return (id - host_count()) % per_leaf;
    case NodeKind::Spine:
      return (id - host_count() - config_.leaf_count * per_leaf) % config_.leaf_count;
    case NodeKind::Host:
      break;
  }
  return 0;
}

PortId Topology::route_next_hop(const Packet& pkt, NodeId at, sim::Rng& rng) const {
  if (pkt.dst_host >= host_count()) {
    throw TopologyError("unreachable destination host " + std::to_string(pkt.dst_host));
  }
  const std::uint32_t dst_leaf = leaf_of(pkt.dst_host);
  switch (kind(at)) {
    case NodeKind::Host:
      return host_nic(at);
    case NodeKind::Leaf: {
      const std::uint32_t leaf = local_index(at);
      if (leaf == dst_leaf) return leaf_downlink(leaf, pkt.dst_host % config_.hosts_per_leaf);
      const auto spine = static_cast<std::uint32_t>(sim::uniform_index(rng, config_.spine_count));
      return leaf_uplink(leaf, spine);
    }
    case NodeKind::Spine:
      return spine_downlink(local_index(at), dst_leaf);
  }
  throw TopologyError("bad node id " + std::to_string(at));
}

}  // namespace awafs::net
