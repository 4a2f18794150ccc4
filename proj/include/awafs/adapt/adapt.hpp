#pragma once

#include <cstddef>

#include "awafs/adapt/window.hpp"
#include "awafs/sched/mlfq.hpp"

namespace awafs::adapt {

struct TickOutcome {
  std::size_t dropped = 0;
  std::size_t samples = 0;
  bool updated = false;
};

/// One actuator pass on a port: slide the window, then, given at least
/// min_samples in scope, replace the thresholds with the reference
/// percentiles of the completed sizes.
TickOutcome adapt_tick(sched::PortScheduler& port, SimTime now, const AdaptParams& params);

}  // namespace awafs::adapt
