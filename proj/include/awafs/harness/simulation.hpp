#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "awafs/adapt/window.hpp"
#include "awafs/metrics/metrics.hpp"
#include "awafs/net/topology.hpp"
#include "awafs/sim/engine.hpp"
#include "awafs/sim/random.hpp"
#include "awafs/transport/dctcp.hpp"

namespace awafs::harness {

using sim::SimTime;

enum class SchedulerKind { Awafs, Static };

const char* to_string(SchedulerKind k);
SchedulerKind scheduler_from_string(const std::string& s);

struct SimulationConfig {
  net::TopologyConfig topology = net::TopologyConfig::desk_scale();
  transport::TransportParams transport;
  SchedulerKind scheduler = SchedulerKind::Static;
  std::vector<std::uint64_t> static_thresholds;  // Static only
  adapt::AdaptParams adapt;                      // Awafs only
  // Window-length sampling period for overhead accounting; zero disables.
  SimTime stats_interval = SimTime::from_ms(50);
  // Hard stop. Without one the run lasts until every flow completes, capped
  // at max_time.
  std::optional<SimTime> end_time;
  SimTime max_time = SimTime::from_seconds(600);
  // When false the engine runs until its queue drains (periodic ticks must
  // then be absent, i.e. a static scheduler with stats_interval zero).
  bool stop_when_complete = true;
  SimTime retire_horizon = SimTime::from_ms(200);
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// A complete leaf-spine network driven by one event engine: hosts running the
/// DCTCP model, switch ports running MLFQ, and (for AWAFS) the periodic
/// threshold adaptation of every switch port.
class Simulation {
 public:
  Simulation(SimulationConfig config, std::vector<transport::FlowSpec> flows);

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  void run();

  const SimulationConfig& config() const { return config_; }
  const net::Topology& topology() const { return topo_; }
  net::Topology& topology() { return topo_; }
  const std::vector<transport::FlowState>& flows() const { return flows_; }
  sim::Engine& engine() { return engine_; }
  const metrics::MetricsLedger& ledger() const { return ledger_; }

  std::uint64_t data_packets_sent(net::FlowId f) const { return sent_[f]; }
  std::uint64_t data_packets_delivered(net::FlowId f) const { return delivered_[f]; }
  std::size_t completed_flows() const { return completed_; }
  std::uint64_t adapt_ticks() const { return adapt_ticks_; }

 private:
  void on_event(const sim::Event& ev);
  void on_flow_arrival(std::uint32_t index);
  void on_packet_arrival(net::NodeId node, std::uint32_t slot);
  void on_departure(net::PortId port);
  void on_timer(net::FlowId flow);
  void on_adapt_tick();
  void on_stats_tick();

  void enqueue(net::PortId port, const net::Packet& pkt);
  void start_transmission(net::PortId port);
  void deliver(net::HostId host, const net::Packet& pkt);
  void send(transport::FlowState& flow);
  void arm_timer(transport::FlowState& flow);
  void finish_flow(transport::FlowState& flow);
  void record_thresholds();
  void finalize();

  std::uint32_t stash(const net::Packet& pkt);
  net::Packet unstash(std::uint32_t slot);

  SimulationConfig config_;
  std::vector<transport::FlowSpec> specs_;
  net::Topology topo_;
  sim::Engine engine_;
  sim::Rng spray_rng_;

  std::vector<transport::FlowState> flows_;
  std::vector<std::optional<transport::FlowReceiver>> receivers_;
  std::vector<bool> opened_;
  std::vector<sim::EventHandle> timer_handles_;
  std::vector<SimTime> timer_at_;
  std::vector<std::uint64_t> sent_;
  std::vector<std::uint64_t> delivered_;

  std::vector<net::Packet> in_tx_;  // per port: packet being serialized
  std::vector<net::Packet> pool_;   // packets propagating on links
  std::vector<std::uint32_t> free_slots_;
  std::vector<net::Packet> burst_;

  metrics::MetricsLedger ledger_;
  std::size_t completed_ = 0;
  std::uint64_t adapt_ticks_ = 0;
  bool finalized_ = false;
};

}  // namespace awafs::harness
