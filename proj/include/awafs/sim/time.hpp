#pragma once

#include <cmath>
#include <compare>
#include <cstdint>

namespace awafs::sim {

/// Simulated time as an integer count of nanoseconds.
class SimTime {
 public:
  constexpr SimTime() = default;

  static constexpr SimTime from_ns(std::int64_t ns) { return SimTime(ns); }
  static constexpr SimTime from_us(double us) { return from_seconds(us * 1e-6); }
  static constexpr SimTime from_ms(double ms) { return from_seconds(ms * 1e-3); }
  static constexpr SimTime from_seconds(double s) {
    // Round to nearest ns; sub-ns remainders are not representable.
    return SimTime(static_cast<std::int64_t>(s * 1e9 + (s >= 0 ? 0.5 : -0.5)));
  }
  static constexpr SimTime max() { return SimTime(INT64_MAX); }

  constexpr std::int64_t ns() const { return ns_; }
  constexpr double seconds() const { return static_cast<double>(ns_) * 1e-9; }

  constexpr auto operator<=>(const SimTime&) const = default;

  constexpr SimTime operator+(SimTime o) const { return SimTime(ns_ + o.ns_); }
  constexpr SimTime operator-(SimTime o) const { return SimTime(ns_ - o.ns_); }
  constexpr SimTime& operator+=(SimTime o) {
    ns_ += o.ns_;
    return *this;
  }

 private:
  constexpr explicit SimTime(std::int64_t ns) : ns_(ns) {}
  std::int64_t ns_ = 0;
};

/// Serialization time of `bytes` on a link of `bps`, rounded up to whole ns.
inline SimTime serialization_time(std::uint64_t bytes, double bps) {
  return SimTime::from_ns(static_cast<std::int64_t>(std::ceil(static_cast<double>(bytes) * 8.0 * 1e9 / bps - 1e-9)));
}

}  // namespace awafs::sim
