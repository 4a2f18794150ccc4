#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "awafs/net/packet.hpp"
#include "awafs/sched/mlfq.hpp"
#include "awafs/sim/time.hpp"
#include "awafs/transport/ecn.hpp"

namespace awafs::transport {

using net::FlowId;
using net::HostId;
using net::Packet;
using sim::SimTime;

struct TransportParams {
  std::uint32_t mss = net::kMssBytes;
  double g = 1.0 / 16.0;
  double initial_cwnd = 10;  // packets
  double initial_alpha = 0.0;
  // Marking threshold for ports at the downlink rate; ports at the uplink rate
  // use fabric_k_multiplier times this value.
  std::uint64_t ecn_k_bytes = 65ULL * net::kDataPacketBytes;
  double fabric_k_multiplier = 4.0;
  SimTime rto_min = SimTime::from_ms(5);
  SimTime rto_max = SimTime::from_ms(200);
  // Base RTT estimate; the initial RTO is max(rto_min, 3 * base_rtt).
  SimTime base_rtt = SimTime::from_us(85.2);

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  friend bool operator==(const TransportParams&, const TransportParams&) = default;
};

struct FlowSpec {
  FlowId flow_id = 0;
  HostId src_host = 0;
  HostId dst_host = 0;
  std::uint64_t size = 0;  // payload bytes
  SimTime start_time;

  friend bool operator==(const FlowSpec&, const FlowSpec&) = default;
};

/// Sender-side state of one DCTCP flow.
struct FlowState {
  FlowSpec spec;
  std::uint64_t bytes_acked = 0;  // snd_una
  std::uint64_t snd_nxt = 0;
  std::uint64_t highest_sent = 0;
  double cwnd = 1;  // packets
  double alpha = 0;
  std::uint32_t ecn_marked_in_window = 0;
  std::uint32_t packets_in_window = 0;
  std::uint64_t window_end = 0;  // the observation window closes when acked past this
  SimTime rto;
  SimTime srtt;
  SimTime rttvar;
  bool have_rtt_sample = false;
  std::uint32_t backoff = 0;
  std::uint32_t timeout_count = 0;
  std::optional<SimTime> completed_at;

  // RTT timing of one segment at a time (Karn: never a retransmitted one).
  std::optional<std::uint64_t> timed_end;
  SimTime timed_at;

  // Lazily re-armed retransmission timer.
  SimTime timer_deadline;
  bool timer_event_pending = false;

  // Lowest priority (highest queue index) any switch assigned to its data.
  std::uint8_t max_queue = 0;

  bool completed() const { return completed_at.has_value(); }
  std::uint64_t bytes_in_flight() const { return snd_nxt - bytes_acked; }
};

FlowState open_flow(const FlowSpec& spec, const TransportParams& params);

/// Appends to `out` every segment the window allows. The segment carrying the
/// final byte is end-marked with the flow's size on its first transmission.
void on_send_opportunity(FlowState& flow, SimTime now, const TransportParams& params, std::vector<Packet>& out);
std::vector<Packet> on_send_opportunity(FlowState& flow, SimTime now, const TransportParams& params);

struct AckOutcome {
  bool advanced = false;
  bool window_closed = false;
  bool completed = false;
};

/// Processes one ACK. Every ACK counts toward the ECN fraction of the current
/// observation window; only ACKs that advance the cumulative point move the
/// window. When a window closes:
///   alpha <- (1-g) alpha + g F,  F = marked / packets
///   cwnd  <- max(1, cwnd (1 - alpha/2))   if F > 0
///   cwnd  <- cwnd + 1                     otherwise
AckOutcome on_ack(FlowState& flow, const Packet& ack, SimTime now, const TransportParams& params);

/// RTO expiry: count it, collapse the window to one packet, rewind to the
/// first unacked byte and back the timer off (doubling, capped).
void on_timeout(FlowState& flow, SimTime now, const TransportParams& params);

/// Current retransmission timeout including backoff.
SimTime current_rto(const FlowState& flow, const TransportParams& params);

/// Bytes-based per-port marking convenience over a scheduler.
inline bool ecn_mark_on_enqueue(const sched::PortScheduler& port, std::uint64_t k_bytes, Packet& pkt) {
  return ecn_mark_on_enqueue(port.backlog_bytes(), k_bytes, pkt);
}

/// Receiver-side reassembly for one flow: tracks which segments arrived and
/// returns the cumulative acknowledgement point.
class FlowReceiver {
 public:
  FlowReceiver(std::uint64_t size, std::uint32_t mss);

  /// Returns the cumulative ACK (bytes) after accepting the segment.
  std::uint64_t on_data(const Packet& data);
  std::uint64_t cumulative() const { return cumulative_; }
  bool complete() const { return cumulative_ == size_; }

 private:
  std::uint64_t size_;
  std::uint32_t mss_;
  std::vector<bool> received_;
  std::uint64_t next_missing_ = 0;  // segment index
  std::uint64_t cumulative_ = 0;
};

Packet make_ack(const Packet& data, std::uint64_t cumulative);

}  // namespace awafs::transport
