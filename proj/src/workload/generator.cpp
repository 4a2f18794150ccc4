#include "awafs/workload/generator.hpp"

#include <queue>
#include <stdexcept>

#include "awafs/sim/random.hpp"

namespace awafs::workload {

const char* to_string(Pairing p) { return p == Pairing::Uniform ? "uniform" : "heterogeneous-ij"; }

Pairing pairing_from_string(const std::string& s) {
  if (s == "uniform") return Pairing::Uniform;
  if (s == "heterogeneous-ij") return Pairing::HeterogeneousIJ;
  throw std::invalid_argument("traffic.pairing: unknown value '" + s + "'");
}

void TrafficPlan::validate() const {
  auto fail = [](const char* field, const std::string& why) {
    throw std::invalid_argument(std::string("traffic.") + field + ": " + why);
  };
  if (duration.has_value() == flow_count.has_value()) fail("duration", "set exactly one of duration or flows");
  if (duration && *duration <= SimTime{}) fail("duration", "must be positive");
  if (flow_count && *flow_count == 0) fail("flows", "must be positive");
  if (!(load > 0.0 && load < 1.0)) fail("load", "must lie in (0,1)");
  if (phases.empty()) fail("phases", "need at least one phase");
  if (phases.front().start != SimTime{}) fail("phases", "first phase must start at 0");
  for (std::size_t i = 1; i < phases.size(); ++i) {
    if (phases[i].start <= phases[i - 1].start) fail("phases", "start times must increase");
  }
  if (pairing == Pairing::HeterogeneousIJ && alternate_workload.empty()) {
    fail("alternate_workload", "required for heterogeneous-ij pairing");
  }
}

std::vector<std::string> TrafficPlan::workloads() const {
  std::vector<std::string> out;
  for (const auto& p : phases) out.push_back(p.workload);
  if (!alternate_workload.empty()) out.push_back(alternate_workload);
  return out;
}

double arrival_rate(double load, double access_capacity_bps, double mean_bytes) {
  return load * access_capacity_bps / (8.0 * mean_bytes);
}

const std::string& workload_for_pair(const TrafficPlan& plan, std::size_t phase, std::uint32_t src,
                                     std::uint32_t dst) {
  if (plan.pairing == Pairing::HeterogeneousIJ && !(src < dst)) return plan.alternate_workload;
  return plan.phases[phase].workload;
}

namespace {

const WorkloadCdf& lookup(const WorkloadSet& set, const std::string& name) {
  auto it = set.find(name);
  if (it == set.end()) throw std::invalid_argument("unknown workload '" + name + "'");
  return it->second;
}

struct HostProcess {
  sim::Rng rng;
  std::vector<double> rate_per_phase;
  double next_at = 0;  // seconds
  std::size_t phase = 0;
};

}  // namespace

std::vector<FlowSpec> generate(const TrafficPlan& plan, const WorkloadSet& workloads, std::uint32_t hosts,
                               double access_capacity_bps, std::uint64_t seed) {
  plan.validate();
  if (hosts < 2) throw std::invalid_argument("generate: need at least 2 hosts");

  std::vector<double> phase_start;
  for (const auto& ph : plan.phases) phase_start.push_back(ph.start.seconds());
  const double horizon = plan.duration ? plan.duration->seconds() : 0.0;

  std::vector<HostProcess> procs(hosts);
  for (std::uint32_t dst = 0; dst < hosts; ++dst) {
    auto& hp = procs[dst];
    hp.rng = sim::make_stream(seed, sim::Stream::Workload, dst);
    for (std::size_t ph = 0; ph < plan.phases.size(); ++ph) {
      double mean;
      if (plan.pairing == Pairing::HeterogeneousIJ) {
        // Sources are uniform over the other hosts; dst of them have src < dst.
        const double below = dst, others = hosts - 1;
        mean = (below * mean_size(lookup(workloads, plan.phases[ph].workload)) +
                (others - below) * mean_size(lookup(workloads, plan.alternate_workload))) /
               others;
      } else {
        mean = mean_size(lookup(workloads, plan.phases[ph].workload));
      }
      hp.rate_per_phase.push_back(arrival_rate(plan.load, access_capacity_bps, mean));
    }
  }

  // Advances one process to its next arrival, restarting the exponential
  // clock at phase boundaries (memorylessness keeps the process Poisson).
  auto advance = [&](HostProcess& hp, double from) {
    double t = from;
    for (;;) {
      const double gap = sim::exponential(hp.rng, hp.rate_per_phase[hp.phase]);
      const bool has_next_phase = hp.phase + 1 < phase_start.size();
      if (has_next_phase && t + gap >= phase_start[hp.phase + 1]) {
        t = phase_start[++hp.phase];
        continue;
      }
      hp.next_at = t + gap;
      return;
    }
  };

  using Entry = std::pair<double, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> next;
  for (std::uint32_t dst = 0; dst < hosts; ++dst) {
    advance(procs[dst], 0.0);
    next.emplace(procs[dst].next_at, dst);
  }

  std::vector<FlowSpec> flows;
  if (plan.flow_count) flows.reserve(*plan.flow_count);
  while (!next.empty()) {
    const auto [t, dst] = next.top();
    next.pop();
    if (plan.duration && t >= horizon) break;
    if (plan.flow_count && flows.size() >= *plan.flow_count) break;

    auto& hp = procs[dst];
    auto src = static_cast<std::uint32_t>(sim::uniform_index(hp.rng, hosts - 1));
    if (src >= dst) ++src;
    const double u = sim::uniform01(hp.rng);
    const auto& cdf = lookup(workloads, workload_for_pair(plan, hp.phase, src, dst));

    FlowSpec f;
    f.flow_id = static_cast<transport::FlowId>(flows.size());
    f.src_host = src;
    f.dst_host = dst;
    f.size = inverse_sample(cdf, u);
    f.start_time = SimTime::from_seconds(t);
    flows.push_back(f);

    advance(hp, t);
    next.emplace(hp.next_at, dst);
  }
  return flows;
}

}  // namespace awafs::workload
