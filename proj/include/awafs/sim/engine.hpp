#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "awafs/sim/time.hpp"

namespace awafs::sim {

enum class EventKind : std::uint8_t {
  PacketArrival,
  PacketDeparture,
  TransportTimeout,
  AdaptTick,
  FlowArrival,
  StatsTick,
};

const char* to_string(EventKind kind);

/// A scheduled occurrence. `a` and `b` are opaque payload slots interpreted by
/// the handler (node/packet ids, port ids, flow ids).
struct Event {
  SimTime fire_at;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::StatsTick;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
};

struct EventHandle {
  std::uint64_t seq = 0;
};

/// Thrown for simulator misuse, e.g. scheduling into the past.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Single-threaded discrete-event engine. Events are delivered by
/// (fire_at, seq); equal-time events therefore come out in insertion order.
class Engine {
 public:
  using Handler = std::function<void(const Event&)>;
  using TraceHook = std::function<void(const Event&)>;

  Engine() = default;
  explicit Engine(Handler handler) : handler_(std::move(handler)) {}

  void set_handler(Handler handler) { handler_ = std::move(handler); }
  void set_trace(TraceHook hook) { trace_ = std::move(hook); }

  EventHandle schedule(SimTime at, EventKind kind, std::uint32_t a = 0, std::uint32_t b = 0);
  EventHandle schedule_in(SimTime delay, EventKind kind, std::uint32_t a = 0, std::uint32_t b = 0) {
    return schedule(now_ + delay, kind, a, b);
  }

  /// Logical cancellation: the event stays queued and is skipped when popped.
  void cancel(EventHandle handle);

  /// Delivers the next live event. Returns false when the queue is empty.
  bool step();

  /// Processes every event with fire_at <= t_end, then advances now to t_end.
  void run_until(SimTime t_end);

  /// Processes events until the queue drains or stop() is called.
  void run();
  void stop() { stopped_ = true; }

  SimTime now() const { return now_; }
  /// Queued events, tombstoned ones included.
  std::size_t pending() const { return queue_.size(); }
  std::uint64_t delivered() const { return delivered_; }

 private:
  struct Later {
    bool operator()(const Event& x, const Event& y) const {
      if (x.fire_at != y.fire_at) return x.fire_at > y.fire_at;
      return x.seq > y.seq;
    }
  };

  bool pop_live(Event& out);
  void deliver(const Event& ev);

  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::unordered_set<std::uint64_t> cancelled_;
  Handler handler_;
  TraceHook trace_;
  SimTime now_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t delivered_ = 0;
  bool stopped_ = false;
};

}  // namespace awafs::sim
