#include "awafs/harness/simulation.hpp"

#include <algorithm>
#include <stdexcept>

#include "awafs/adapt/adapt.hpp"

namespace awafs::harness {

using net::NodeKind;
using net::Packet;
using sim::EventKind;
using transport::FlowState;

const char* to_string(SchedulerKind k) { return k == SchedulerKind::Awafs ? "awafs" : "static"; }

SchedulerKind scheduler_from_string(const std::string& s) {
  if (s == "awafs") return SchedulerKind::Awafs;
  if (s == "static") return SchedulerKind::Static;
  throw std::invalid_argument("scheduler.kind: unknown scheduler '" + s + "'");
}

void SimulationConfig::validate() const {
  topology.validate();
  transport.validate();
  const std::size_t k = topology.queues_per_port;
  if (scheduler == SchedulerKind::Static) {
    if (!sched::valid_thresholds(static_thresholds, k)) {
      throw std::invalid_argument("scheduler.thresholds: static scheduler needs queues-1 positive nondecreasing values");
    }
  } else {
    adapt.validate(k);
  }
}

namespace {

net::PortSetup port_setup(const SimulationConfig& c) {
  net::PortSetup s;
  s.thresholds = c.scheduler == SchedulerKind::Static ? c.static_thresholds : c.adapt.initial_thresholds;
  s.access.ecn_k_bytes = c.transport.ecn_k_bytes;
  s.access.sense_completions = c.scheduler == SchedulerKind::Awafs;
  s.access.retire_horizon = c.retire_horizon;
  s.fabric = s.access;
  s.fabric.ecn_k_bytes =
      static_cast<std::uint64_t>(static_cast<double>(c.transport.ecn_k_bytes) * c.transport.fabric_k_multiplier);
  return s;
}

const SimulationConfig& validated(const SimulationConfig& c) {
  c.validate();
  return c;
}

}  // namespace

Simulation::Simulation(SimulationConfig config, std::vector<transport::FlowSpec> flows)
    : config_(std::move(config)),
      specs_(std::move(flows)),
      topo_(net::Topology::build(validated(config_).topology, port_setup(config_))),
      spray_rng_(sim::make_stream(config_.seed, sim::Stream::Spray)) {
  std::stable_sort(specs_.begin(), specs_.end(),
                   [](const auto& a, const auto& b) { return a.start_time < b.start_time; });
  const std::size_t n = specs_.size();
  std::vector<bool> seen(n, false);
  for (const auto& s : specs_) {
    if (s.flow_id >= n || seen[s.flow_id]) throw std::invalid_argument("flow ids must be a permutation of 0..n-1");
    if (s.src_host >= topo_.host_count() || s.dst_host >= topo_.host_count()) {
      throw std::invalid_argument("flow " + std::to_string(s.flow_id) + " references an unknown host");
    }
    seen[s.flow_id] = true;
  }
  flows_.resize(n);
  receivers_.resize(n);
  opened_.assign(n, false);
  timer_handles_.resize(n);
  timer_at_.resize(n);
  sent_.assign(n, 0);
  delivered_.assign(n, 0);
  in_tx_.resize(topo_.ports().size());
  engine_.set_handler([this](const sim::Event& ev) { on_event(ev); });
}

void Simulation::run() {
  if (finalized_) return;
  if (!specs_.empty()) engine_.schedule(specs_.front().start_time, EventKind::FlowArrival, 0);
  record_thresholds();
  if (config_.scheduler == SchedulerKind::Awafs) {
    engine_.schedule(config_.adapt.t_schedule, EventKind::AdaptTick);
    if (config_.stats_interval > SimTime{}) engine_.schedule(config_.stats_interval, EventKind::StatsTick);
  }
  if (!config_.stop_when_complete) {
    engine_.run();
  } else if (!specs_.empty()) {
    engine_.run_until(config_.end_time.value_or(config_.max_time));
  } else if (config_.end_time) {
    engine_.run_until(*config_.end_time);
  }
  finalize();
}

void Simulation::on_event(const sim::Event& ev) {
  switch (ev.kind) {
    case EventKind::PacketArrival:
      on_packet_arrival(ev.a, ev.b);
      break;
    case EventKind::PacketDeparture:
      on_departure(ev.a);
      break;
    case EventKind::TransportTimeout:
      on_timer(ev.a);
      break;
    case EventKind::AdaptTick:
      on_adapt_tick();
      break;
    case EventKind::FlowArrival:
      on_flow_arrival(ev.a);
      break;
    case EventKind::StatsTick:
      on_stats_tick();
      break;
  }
}

void Simulation::on_flow_arrival(std::uint32_t index) {
  const auto& spec = specs_[index];
  if (index + 1 < specs_.size()) engine_.schedule(specs_[index + 1].start_time, EventKind::FlowArrival, index + 1);
  auto& flow = flows_[spec.flow_id];
  flow = transport::open_flow(spec, config_.transport);
  opened_[spec.flow_id] = true;
  receivers_[spec.flow_id].emplace(spec.size, config_.transport.mss);
  send(flow);
  flow.timer_deadline = engine_.now() + transport::current_rto(flow, config_.transport);
  arm_timer(flow);
}

void Simulation::send(FlowState& flow) {
  burst_.clear();
  transport::on_send_opportunity(flow, engine_.now(), config_.transport, burst_);
  sent_[flow.spec.flow_id] += burst_.size();
  for (const auto& p : burst_) enqueue(topo_.host_nic(flow.spec.src_host), p);
}

void Simulation::arm_timer(FlowState& flow) {
  const auto id = flow.spec.flow_id;
  if (flow.completed()) return;
  if (flow.timer_event_pending) {
    if (flow.timer_deadline >= timer_at_[id]) return;  // the pending event re-checks the deadline
    engine_.cancel(timer_handles_[id]);
  }
  timer_handles_[id] = engine_.schedule(flow.timer_deadline, EventKind::TransportTimeout, id);
  timer_at_[id] = flow.timer_deadline;
  flow.timer_event_pending = true;
}

void Simulation::on_timer(net::FlowId id) {
  auto& flow = flows_[id];
  flow.timer_event_pending = false;
  if (flow.completed() || flow.bytes_in_flight() == 0) return;
  if (flow.timer_deadline > engine_.now()) {
    arm_timer(flow);
    return;
  }
  transport::on_timeout(flow, engine_.now(), config_.transport);
  send(flow);
  arm_timer(flow);
}

void Simulation::enqueue(net::PortId id, const Packet& pkt) {
  auto& port = topo_.port(id);
  if (port.mlfq) {
    const std::size_t q = port.mlfq->enqueue(pkt, engine_.now());
    if (!pkt.is_ack) {
      auto& flow = flows_[pkt.flow_id];
      flow.max_queue = std::max<std::uint8_t>(flow.max_queue, static_cast<std::uint8_t>(q));
    }
  } else {
    Packet copy = pkt;
    transport::ecn_mark_on_enqueue(port.fifo_bytes, config_.transport.ecn_k_bytes, copy);
    port.fifo_bytes += copy.size;
    port.fifo.push_back(copy);
  }
  if (!port.busy) start_transmission(id);
}

void Simulation::start_transmission(net::PortId id) {
  auto& port = topo_.port(id);
  Packet pkt;
  if (port.mlfq) {
    auto next = port.mlfq->dequeue();
    if (!next) {
      port.busy = false;
      return;
    }
    pkt = *next;
  } else {
    if (port.fifo.empty()) {
      port.busy = false;
      return;
    }
    pkt = port.fifo.front();
    port.fifo.pop_front();
    port.fifo_bytes -= pkt.size;
  }
  port.busy = true;
  in_tx_[id] = pkt;
  engine_.schedule_in(sim::serialization_time(pkt.size, port.link.capacity_bps), EventKind::PacketDeparture, id);
}

void Simulation::on_departure(net::PortId id) {
  auto& port = topo_.port(id);
  const std::uint32_t slot = stash(in_tx_[id]);
  engine_.schedule_in(port.link.prop_delay, EventKind::PacketArrival, port.link.to, slot);
  start_transmission(id);
}

void Simulation::on_packet_arrival(net::NodeId node, std::uint32_t slot) {
  const Packet pkt = unstash(slot);
  if (topo_.kind(node) == NodeKind::Host) {
    deliver(node, pkt);
    return;
  }
  enqueue(topo_.route_next_hop(pkt, node, spray_rng_), pkt);
}

void Simulation::deliver(net::HostId host, const Packet& pkt) {
  if (pkt.dst_host != host) throw std::logic_error("packet delivered to the wrong host");
  auto& flow = flows_[pkt.flow_id];
  if (pkt.is_ack) {
    const auto out = transport::on_ack(flow, pkt, engine_.now(), config_.transport);
    if (out.completed) {
      finish_flow(flow);
      return;
    }
    if (out.advanced) {
      send(flow);
      arm_timer(flow);
    }
    return;
  }
  ++delivered_[pkt.flow_id];
  auto& rx = receivers_[pkt.flow_id];
  if (!rx) return;  // sender already done; late duplicate
  const std::uint64_t cum = rx->on_data(pkt);
  enqueue(topo_.host_nic(host), transport::make_ack(pkt, cum));
}

void Simulation::finish_flow(FlowState& flow) {
  const auto id = flow.spec.flow_id;
  receivers_[id].reset();
  if (flow.timer_event_pending) {
    engine_.cancel(timer_handles_[id]);
    flow.timer_event_pending = false;
  }
  ++completed_;
  if (config_.stop_when_complete && completed_ == specs_.size()) engine_.stop();
}

void Simulation::record_thresholds() {
  for (net::PortId id : topo_.switch_ports()) {
    const auto& thr = topo_.port(id).mlfq->thresholds();
    const std::string name = topo_.switch_name(id);
    const std::uint32_t local = topo_.switch_port_index(id);
    for (std::size_t i = 0; i < thr.size(); ++i) {
      ledger_.add_threshold({engine_.now(), name, local, static_cast<std::uint32_t>(i + 1), thr[i]});
    }
  }
}

void Simulation::on_adapt_tick() {
  ++adapt_ticks_;
  for (net::PortId id : topo_.switch_ports()) adapt::adapt_tick(*topo_.port(id).mlfq, engine_.now(), config_.adapt);
  record_thresholds();
  engine_.schedule_in(config_.adapt.t_schedule, EventKind::AdaptTick);
}

void Simulation::on_stats_tick() {
  std::size_t total = 0, peak = 0;
  for (net::PortId id : topo_.switch_ports()) {
    const std::size_t n = topo_.port(id).mlfq->window().size();
    total += n;
    peak = std::max(peak, n);
  }
  const auto ports = topo_.switch_ports().size();
  ledger_.add_window_sample(ports ? static_cast<double>(total) / static_cast<double>(ports) : 0.0, peak);
  engine_.schedule_in(config_.stats_interval, EventKind::StatsTick);
}

void Simulation::finalize() {
  finalized_ = true;
  for (std::size_t i = 0; i < flows_.size(); ++i) {
    if (!opened_[i]) continue;
    const auto& f = flows_[i];
    metrics::FlowRecord r;
    r.flow_id = f.spec.flow_id;
    r.src = f.spec.src_host;
    r.dst = f.spec.dst_host;
    r.size = f.spec.size;
    r.start = f.spec.start_time;
    if (f.completed_at) r.fct = *f.completed_at - f.spec.start_time;
    r.timeouts = f.timeout_count;
    r.max_queue = f.max_queue;
    ledger_.add_flow(r);
  }
}

std::uint32_t Simulation::stash(const Packet& pkt) {
  if (!free_slots_.empty()) {
    const std::uint32_t slot = free_slots_.back();
    free_slots_.pop_back();
    pool_[slot] = pkt;
    return slot;
  }
  pool_.push_back(pkt);
  return static_cast<std::uint32_t>(pool_.size() - 1);
}

Packet Simulation::unstash(std::uint32_t slot) {
  free_slots_.push_back(slot);
  return pool_[slot];
}

}  // namespace awafs::harness
