#pragma once

#include <cstdint>

#include "awafs/net/packet.hpp"

namespace awafs::transport {

/// Per-port ECN marking: sets CE when the bytes already queued at the port,
/// across all priority queues, exceed k_bytes. ACKs are never marked.
inline bool ecn_mark_on_enqueue(std::uint64_t port_backlog_bytes, std::uint64_t k_bytes, net::Packet& pkt) {
  if (pkt.is_ack) return false;
  if (port_backlog_bytes > k_bytes) {
    pkt.ecn_ce = true;
    return true;
  }
  return false;
}

}  // namespace awafs::transport
