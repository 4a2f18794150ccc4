#include "awafs/sim/engine.hpp"

#include <string>

namespace awafs::sim {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::PacketArrival:
      return "PacketArrival";
    case EventKind::PacketDeparture:
      return "PacketDeparture";
    case EventKind::TransportTimeout:
      return "TransportTimeout";
    case EventKind::AdaptTick:
      return "AdaptTick";
    case EventKind::FlowArrival:
      return "FlowArrival";
    case EventKind::StatsTick:
      return "StatsTick";
  }
  return "?";
}

EventHandle Engine::schedule(SimTime at, EventKind kind, std::uint32_t a, std::uint32_t b) {
  if (at < now_) {
    throw ConfigurationError("event " + std::string(to_string(kind)) + " scheduled at " +
                             std::to_string(at.ns()) + " ns, before current time " +
                             std::to_string(now_.ns()) + " ns");
  }
  Event ev{at, next_seq_++, kind, a, b};
  queue_.push(ev);
  return EventHandle{ev.seq};
}

void Engine::cancel(EventHandle handle) {
  if (handle.seq < next_seq_) cancelled_.insert(handle.seq);
}

bool Engine::pop_live(Event& out) {
  while (!queue_.empty()) {
    out = queue_.top();
    queue_.pop();
    if (!cancelled_.empty()) {
      auto it = cancelled_.find(out.seq);
      if (it != cancelled_.end()) {
        cancelled_.erase(it);
        continue;
      }
    }
    return true;
  }
  return false;
}

void Engine::deliver(const Event& ev) {
  now_ = ev.fire_at;
  ++delivered_;
  if (trace_) trace_(ev);
  if (handler_) handler_(ev);
}

bool Engine::step() {
  Event ev;
  if (!pop_live(ev)) return false;
  deliver(ev);
  return true;
}

void Engine::run_until(SimTime t_end) {
  stopped_ = false;
  while (!stopped_ && !queue_.empty()) {
    if (queue_.top().fire_at > t_end) break;
    Event ev;
    if (!pop_live(ev)) break;
    if (ev.fire_at > t_end) {
      // A cancelled head was skipped and the next live event lies beyond t_end.
      queue_.push(ev);
      break;
    }
    deliver(ev);
  }
  if (!stopped_ && now_ < t_end) now_ = t_end;
}

void Engine::run() {
  stopped_ = false;
  while (!stopped_ && step()) {
  }
}

}  // namespace awafs::sim
