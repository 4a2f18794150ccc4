#include "awafs/adapt/adapt.hpp"

namespace awafs::adapt {

TickOutcome adapt_tick(sched::PortScheduler& port, SimTime now, const AdaptParams& params) {
  TickOutcome out;
  auto& window = port.window();
  out.dropped = window.prune(now, params.w_update);
  out.samples = window.size();
  if (out.samples < params.min_samples || out.samples == 0) return out;
  const auto sizes = window.sizes();
  if (auto thr = percentile_thresholds(sizes, params.ref_pcts)) out.updated = port.set_thresholds(*thr);
  return out;
}

}  // namespace awafs::adapt
