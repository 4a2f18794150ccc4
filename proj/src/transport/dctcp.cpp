#include "awafs/transport/dctcp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace awafs::transport {

void TransportParams::validate() const {
  auto fail = [](const char* field, const char* why) {
    throw std::invalid_argument(std::string("transport.") + field + ": " + why);
  };
  if (mss == 0) fail("mss", "must be positive");
  if (!(g > 0.0 && g <= 1.0)) fail("g", "must lie in (0,1]");
  if (!(initial_cwnd >= 1.0)) fail("initial_cwnd", "must be >= 1");
  if (!(initial_alpha >= 0.0 && initial_alpha <= 1.0)) fail("initial_alpha", "must lie in [0,1]");
  if (!(fabric_k_multiplier > 0.0)) fail("fabric_k_multiplier", "must be positive");
  if (rto_min <= SimTime{}) fail("rto_min", "must be positive");
  if (rto_max < rto_min) fail("rto_max", "must be >= rto_min");
}

FlowState open_flow(const FlowSpec& spec, const TransportParams& params) {
  if (spec.size == 0) throw std::invalid_argument("flow size must be >= 1 byte");
  if (spec.src_host == spec.dst_host) throw std::invalid_argument("flow source equals destination");
  FlowState f;
  f.spec = spec;
  f.cwnd = params.initial_cwnd;
  f.alpha = params.initial_alpha;
  f.rto = std::max(params.rto_min, SimTime::from_ns(3 * params.base_rtt.ns()));
  return f;
}

SimTime current_rto(const FlowState& flow, const TransportParams& params) {
  std::int64_t ns = flow.rto.ns();
  for (std::uint32_t i = 0; i < flow.backoff && ns < params.rto_max.ns(); ++i) ns *= 2;
  return std::min(SimTime::from_ns(ns), params.rto_max);
}

void on_send_opportunity(FlowState& flow, SimTime now, const TransportParams& params, std::vector<Packet>& out) {
  if (flow.completed()) return;
  const std::uint64_t size = flow.spec.size;
  const auto window_packets = static_cast<std::uint64_t>(std::max(1.0, std::floor(flow.cwnd)));
  while (flow.snd_nxt < size) {
    const std::uint64_t in_flight_packets = (flow.bytes_in_flight() + params.mss - 1) / params.mss;
    if (in_flight_packets >= window_packets) break;
    const auto len = static_cast<std::uint32_t>(std::min<std::uint64_t>(params.mss, size - flow.snd_nxt));
    Packet p;
    p.flow_id = flow.spec.flow_id;
    p.src_host = flow.spec.src_host;
    p.dst_host = flow.spec.dst_host;
    p.payload = len;
    p.size = len + net::kHeaderBytes;
    p.seq_no = flow.snd_nxt;
    p.retransmit = flow.snd_nxt < flow.highest_sent;
    const std::uint64_t end = flow.snd_nxt + len;
    if (end == size && !p.retransmit) {
      p.flow_end_mark = true;
      p.final_size = size;
    }
    if (!p.retransmit && !flow.timed_end) {
      flow.timed_end = end;
      flow.timed_at = now;
    }
    flow.snd_nxt = end;
    flow.highest_sent = std::max(flow.highest_sent, end);
    out.push_back(p);
  }
  // Open an observation window over what is now in flight if none is open.
  if (flow.window_end <= flow.bytes_acked) flow.window_end = flow.snd_nxt;
}

std::vector<Packet> on_send_opportunity(FlowState& flow, SimTime now, const TransportParams& params) {
  std::vector<Packet> out;
  on_send_opportunity(flow, now, params, out);
  return out;
}

namespace {

void update_rtt(FlowState& flow, SimTime sample, const TransportParams& params) {
  if (!flow.have_rtt_sample) {
    flow.srtt = sample;
    flow.rttvar = SimTime::from_ns(sample.ns() / 2);
    flow.have_rtt_sample = true;
  } else {
    const std::int64_t err = sample.ns() - flow.srtt.ns();
    flow.rttvar = SimTime::from_ns(flow.rttvar.ns() + (std::abs(err) - flow.rttvar.ns()) / 4);
    flow.srtt = SimTime::from_ns(flow.srtt.ns() + err / 8);
  }
  flow.rto = std::clamp(SimTime::from_ns(flow.srtt.ns() + 4 * flow.rttvar.ns()), params.rto_min, params.rto_max);
}

}  // namespace

AckOutcome on_ack(FlowState& flow, const Packet& ack, SimTime now, const TransportParams& params) {
  AckOutcome out;
  if (flow.completed() || !ack.is_ack) return out;

  ++flow.packets_in_window;
  if (ack.ecn_echo) ++flow.ecn_marked_in_window;

  const std::uint64_t cum = std::min(ack.seq_no, flow.spec.size);
  if (cum <= flow.bytes_acked) return out;  // stale or duplicate: no reaction

  out.advanced = true;
  flow.bytes_acked = cum;
  if (flow.snd_nxt < cum) flow.snd_nxt = cum;
  flow.backoff = 0;

  if (flow.timed_end && cum >= *flow.timed_end) {
    update_rtt(flow, now - flow.timed_at, params);
    flow.timed_end.reset();
  }

  if (cum >= flow.window_end) {
    out.window_closed = true;
    const double frac = flow.packets_in_window == 0
                            ? 0.0
                            : static_cast<double>(flow.ecn_marked_in_window) / flow.packets_in_window;
    flow.alpha = (1.0 - params.g) * flow.alpha + params.g * frac;
    flow.alpha = std::clamp(flow.alpha, 0.0, 1.0);
    if (frac > 0.0) {
      flow.cwnd = std::max(1.0, flow.cwnd * (1.0 - flow.alpha / 2.0));
    } else {
      flow.cwnd += 1.0;
    }
    flow.ecn_marked_in_window = 0;
    flow.packets_in_window = 0;
    flow.window_end = flow.snd_nxt;
  }

  if (flow.bytes_acked == flow.spec.size) {
    flow.completed_at = now;
    out.completed = true;
  } else {
    flow.timer_deadline = now + current_rto(flow, params);
  }
  return out;
}

void on_timeout(FlowState& flow, SimTime now, const TransportParams& params) {
  if (flow.completed() || flow.bytes_in_flight() == 0) return;
  ++flow.timeout_count;
  flow.cwnd = 1;
  flow.snd_nxt = flow.bytes_acked;
  flow.timed_end.reset();
  flow.ecn_marked_in_window = 0;
  flow.packets_in_window = 0;
  flow.window_end = flow.bytes_acked;
  if (current_rto(flow, params) < params.rto_max) ++flow.backoff;
  flow.timer_deadline = now + current_rto(flow, params);
}

FlowReceiver::FlowReceiver(std::uint64_t size, std::uint32_t mss)
    : size_(size), mss_(mss), received_((size + mss - 1) / mss, false) {}

std::uint64_t FlowReceiver::on_data(const Packet& data) {
  const std::uint64_t idx = data.seq_no / mss_;
  if (idx < received_.size()) received_[idx] = true;
  while (next_missing_ < received_.size() && received_[next_missing_]) ++next_missing_;
  cumulative_ = std::min(size_, next_missing_ * mss_);
  return cumulative_;
}

Packet make_ack(const Packet& data, std::uint64_t cumulative) {
  Packet ack;
  ack.flow_id = data.flow_id;
  ack.src_host = data.dst_host;
  ack.dst_host = data.src_host;
  ack.size = net::kAckBytes;
  ack.payload = 0;
  ack.seq_no = cumulative;
  ack.is_ack = true;
  ack.ecn_echo = data.ecn_ce;
  ack.priority_tag = 1;
  return ack;
}

}  // namespace awafs::transport
