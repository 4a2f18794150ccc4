#pragma once

#include <cstdint>

namespace awafs::net {

using FlowId = std::uint32_t;
using HostId = std::uint32_t;

inline constexpr std::uint32_t kMssBytes = 1460;
inline constexpr std::uint32_t kHeaderBytes = 40;
inline constexpr std::uint32_t kDataPacketBytes = kMssBytes + kHeaderBytes;
inline constexpr std::uint32_t kAckBytes = 40;

struct Packet {
  FlowId flow_id = 0;
  HostId src_host = 0;
  HostId dst_host = 0;
  std::uint32_t size = 0;     // on-wire bytes
  std::uint32_t payload = 0;  // data bytes; 0 for ACKs
  // Data: byte offset of the payload. ACK: cumulative bytes acknowledged.
  std::uint64_t seq_no = 0;
  // Valid only when flow_end_mark is set.
  std::uint64_t final_size = 0;
  std::uint8_t priority_tag = 1;  // 1-based queue index assigned at the last switch enqueue
  bool ecn_ce = false;
  bool ecn_echo = false;  // ACK only: CE bit of the data packet being acknowledged
  bool flow_end_mark = false;
  bool is_ack = false;
  bool retransmit = false;
};

}  // namespace awafs::net
