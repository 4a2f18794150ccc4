#include "awafs/harness/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>

#include "awafs/adapt/window.hpp"
#include "awafs/harness/simulation.hpp"
#include "awafs/workload/generator.hpp"

namespace awafs::harness {

using metrics::FlowClass;

std::vector<const RunResult*> ScenarioResult::select(SchedulerKind s, std::optional<SimTime> window) const {
  std::vector<const RunResult*> out;
  for (const auto& r : runs) {
    if (r.scheduler != s) continue;
    if (window && r.window != *window) continue;
    out.push_back(&r);
  }
  return out;
}

std::vector<transport::FlowSpec> scenario_flows(const ScenarioConfig& c, const workload::WorkloadSet& workloads,
                                                std::uint64_t seed) {
  return workload::generate(c.traffic, workloads, c.topology.host_count(), c.topology.downlink_bps, seed);
}

std::string run_label(const ScenarioConfig& c, std::optional<SimTime> window) {
  if (!window || c.kind != ScenarioKind::Overhead) return c.name;
  return c.name + "-w" + std::to_string(window->ns() / 1'000'000) + "ms";
}

ScenarioConfig run_manifest(const ScenarioConfig& c, SchedulerKind s, std::uint64_t seed,
                            std::optional<SimTime> window) {
  ScenarioConfig m = c;
  m.schedulers = {s};
  m.seed = seed;
  m.reps = 1;
  if (window) {
    m.adapt.w_update = *window;
    m.window_sweep = {*window};
  }
  return m;
}

RunResult run_once(const ScenarioConfig& c, SchedulerKind s, std::uint64_t seed, const workload::WorkloadSet& workloads,
                   std::optional<SimTime> window) {
  SimulationConfig sc = c.simulation(s, seed);
  if (window) sc.adapt.w_update = *window;

  Simulation sim(sc, scenario_flows(c, workloads, seed));
  sim.run();

  RunResult r;
  r.label = run_label(c, window);
  r.scheduler = s;
  r.seed = seed;
  r.window = sc.adapt.w_update;
  r.ledger = sim.ledger();
  r.aggregates = r.ledger.aggregate(c.warmup, c.tail_pct);
  r.events = sim.engine().delivered();
  r.adapt_ticks = sim.adapt_ticks();
  r.flows = sim.flows().size();
  r.completed = sim.completed_flows();
  return r;
}

namespace {

struct Job {
  SchedulerKind scheduler;
  std::uint64_t seed;
  std::optional<SimTime> window;
};

void write_file(const std::filesystem::path& path, const std::string& what,
                const std::function<void(std::ostream&)>& body) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing " + what);
  body(out);
  out.flush();
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

const metrics::ClassStats& stats_of(const RunResult& r, std::optional<FlowClass> cls) {
  return cls ? r.aggregates.of(*cls) : r.aggregates.overall;
}

std::optional<MetricInterval> interval(const std::vector<const RunResult*>& runs, std::optional<FlowClass> cls,
                                       const std::string& metric, metrics::CiMethod ci) {
  std::vector<double> values;
  for (const auto* r : runs) {
    const auto& s = stats_of(*r, cls);
    if (metric == "mean_fct") {
      if (s.fct) values.push_back(s.fct->mean);
    } else if (metric == "p99_fct") {
      if (s.fct) values.push_back(s.fct->p99);
    } else if (metric == "timeouts") {
      values.push_back(static_cast<double>(s.timeouts));
    } else if (metric == "completed") {
      values.push_back(static_cast<double>(s.completed));
    } else if (metric == "flows") {
      values.push_back(static_cast<double>(s.flows));
    } else {
      throw std::invalid_argument("unknown metric '" + metric + "'");
    }
  }
  if (values.empty()) return std::nullopt;
  MetricInterval m;
  m.runs = values.size();
  if (auto iv = metrics::ci95(values, ci)) {
    m.mean = iv->mean;
    m.half_width = iv->half_width;
  } else {
    m.mean = values.front();
  }
  return m;
}

const char* const kMetrics[] = {"mean_fct", "p99_fct", "flows", "completed", "timeouts"};

struct NamedClass {
  const char* name;
  std::optional<FlowClass> cls;
};

const NamedClass kClasses[] = {{"small", FlowClass::Small},
                               {"medium", FlowClass::Medium},
                               {"large", FlowClass::Large},
                               {"overall", std::nullopt}};

std::vector<SimTime> windows_of(const ScenarioConfig& c) {
  if (c.kind == ScenarioKind::Overhead) return c.window_sweep;
  return {};
}

}  // namespace

std::optional<MetricInterval> across_runs(const std::vector<const RunResult*>& runs, FlowClass cls,
                                          const std::string& metric, metrics::CiMethod ci) {
  return interval(runs, cls, metric, ci);
}

std::optional<MetricInterval> across_runs_overall(const std::vector<const RunResult*>& runs, const std::string& metric,
                                                  metrics::CiMethod ci) {
  return interval(runs, std::nullopt, metric, ci);
}

void write_aggregate_csv(std::ostream& out, const ScenarioResult& r, const std::string& label,
                         const std::vector<const RunResult*>& runs) {
  out << "scenario,load,scheduler,class,metric,mean,ci95_half_width,runs\n";
  if (runs.empty()) return;
  const char* sched = to_string(runs.front()->scheduler);
  for (const auto& nc : kClasses) {
    bool any = false;
    for (const auto* run : runs) any = any || stats_of(*run, nc.cls).flows > 0;
    if (!any) continue;
    for (const char* metric : kMetrics) {
      const auto m = interval(runs, nc.cls, metric, r.config.ci);
      out << label << ',' << metrics::format_number(r.config.traffic.load, 2) << ',' << sched << ',' << nc.name << ','
          << metric << ',';
      if (m) {
        out << metrics::format_number(m->mean) << ',' << (m->half_width ? metrics::format_number(*m->half_width) : "")
            << ',' << m->runs;
      } else {
        out << ",,0";
      }
      out << '\n';
    }
  }
}

void write_comparison_csv(std::ostream& out, const ScenarioResult& r) {
  out << "class,metric,awafs,static,reduction_pct\n";
  const auto awafs = r.select(SchedulerKind::Awafs);
  const auto fixed = r.select(SchedulerKind::Static);
  for (const auto& nc : kClasses) {
    for (const char* metric : {"mean_fct", "p99_fct", "timeouts"}) {
      const auto a = interval(awafs, nc.cls, metric, r.config.ci);
      const auto s = interval(fixed, nc.cls, metric, r.config.ci);
      if (!a || !s) continue;
      out << nc.name << ',' << metric << ',' << metrics::format_number(a->mean) << ','
          << metrics::format_number(s->mean) << ',';
      if (s->mean != 0) out << metrics::format_number(100.0 * (s->mean - a->mean) / s->mean, 3);
      out << '\n';
    }
  }
}

void write_overhead_csv(std::ostream& out, const ScenarioResult& r) {
  out << "window,seed,mean_entries,max_entries,footprint_bytes\n";
  for (const auto& run : r.runs) {
    const double mean = run.ledger.mean_window_entries();
    out << metrics::format_seconds(run.window) << ',' << run.seed << ',' << metrics::format_number(mean, 3) << ','
        << run.ledger.max_window_entries() << ','
        << adapt::footprint_bytes(static_cast<std::size_t>(std::llround(mean))) << '\n';
  }
}

ScenarioResult run_scenario(const ScenarioConfig& c, const RunnerOptions& opts) {
  c.validate();
  const auto workloads = load_workloads(c);

  std::vector<Job> jobs;
  const auto windows = windows_of(c);
  for (SchedulerKind s : c.schedulers) {
    for (std::uint32_t i = 0; i < c.reps; ++i) {
      if (windows.empty()) {
        jobs.push_back({s, c.seed + i, std::nullopt});
      } else {
        for (SimTime w : windows) jobs.push_back({s, c.seed + i, w});
      }
    }
  }

  ScenarioResult result;
  result.config = c;
  result.runs.resize(jobs.size());

  std::mutex log_mu;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        const Job& j = jobs[i];
        RunResult r = run_once(c, j.scheduler, j.seed, workloads, j.window);
        r.dir = c.out_dir / r.label / to_string(j.scheduler) / ("run-" + std::to_string(j.seed));
        if (opts.write_outputs) {
          metrics::emit(r.ledger, {r.label, c.traffic.load, to_string(j.scheduler)}, c.warmup, r.dir, c.tail_pct);
          const auto manifest = run_manifest(c, j.scheduler, j.seed, j.window);
          write_file(r.dir / "manifest.ini", "manifest", [&](std::ostream& o) { write_config(o, manifest); });
        }
        if (opts.log) {
          std::lock_guard lock(log_mu);
          *opts.log << "  " << r.label << " " << to_string(j.scheduler) << " seed " << j.seed << ": " << r.completed
                    << "/" << r.flows << " flows completed, " << r.events << " events\n";
        }
        result.runs[i] = std::move(r);
      } catch (...) {
        std::lock_guard lock(log_mu);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(jobs.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  if (opts.write_outputs) {
    std::vector<std::optional<SimTime>> groups;
    if (windows.empty()) {
      groups.push_back(std::nullopt);
    } else {
      groups.assign(windows.begin(), windows.end());
    }
    for (SchedulerKind s : c.schedulers) {
      for (const auto& w : groups) {
        const auto runs = result.select(s, w);
        const std::string label = run_label(c, w);
        write_file(c.out_dir / label / to_string(s) / "aggregate.csv", "aggregate",
                   [&](std::ostream& o) { write_aggregate_csv(o, result, label, runs); });
      }
    }
    if (c.runs(SchedulerKind::Awafs) && c.runs(SchedulerKind::Static)) {
      write_file(c.out_dir / c.name / "comparison.csv", "comparison",
                 [&](std::ostream& o) { write_comparison_csv(o, result); });
    }
    if (c.kind == ScenarioKind::Overhead) {
      write_file(c.out_dir / c.name / "overhead.csv", "overhead", [&](std::ostream& o) { write_overhead_csv(o, result); });
    }
  }
  return result;
}

void print_summary(std::ostream& out, const ScenarioResult& r) {
  const auto& c = r.config;
  auto ms = [](double s) { return metrics::format_number(s * 1e3, 3); };
  char line[256];
  const auto windows = windows_of(c);
  std::vector<std::optional<SimTime>> groups;
  if (windows.empty()) {
    groups.push_back(std::nullopt);
  } else {
    groups.assign(windows.begin(), windows.end());
  }
  for (SchedulerKind s : c.schedulers) {
    for (const auto& w : groups) {
      const auto runs = r.select(s, w);
      out << run_label(c, w) << " / " << to_string(s) << " (" << runs.size() << " run" << (runs.size() == 1 ? "" : "s")
          << ", load " << metrics::format_number(c.traffic.load, 2) << ")\n";
      std::snprintf(line, sizeof line, "  %-8s %22s %12s %10s %14s\n", "class", "mean FCT ms (+-CI)", "p99 FCT ms",
                    "timeouts", "completed");
      out << line;
      for (const auto& nc : kClasses) {
        const auto flows = interval(runs, nc.cls, "flows", c.ci);
        if (!flows || flows->mean == 0) continue;
        const auto mean = interval(runs, nc.cls, "mean_fct", c.ci);
        const auto p99 = interval(runs, nc.cls, "p99_fct", c.ci);
        const auto to = interval(runs, nc.cls, "timeouts", c.ci);
        const auto done = interval(runs, nc.cls, "completed", c.ci);
        std::string mean_s = mean ? ms(mean->mean) : "-";
        if (mean && mean->half_width) mean_s += " +- " + ms(*mean->half_width);
        std::snprintf(line, sizeof line, "  %-8s %22s %12s %10s %14s\n", nc.name, mean_s.c_str(),
                      p99 ? ms(p99->mean).c_str() : "-", metrics::format_number(to->mean, 1).c_str(),
                      (metrics::format_number(done->mean, 0) + "/" + metrics::format_number(flows->mean, 0)).c_str());
        out << line;
      }
      if (s == SchedulerKind::Awafs && c.kind == ScenarioKind::Overhead) {
        double entries = 0;
        for (const auto* run : runs) entries += run->ledger.mean_window_entries();
        if (!runs.empty()) entries /= static_cast<double>(runs.size());
        out << "  mean completed-flow window entries per port: " << metrics::format_number(entries, 1) << " ("
            << adapt::footprint_bytes(static_cast<std::size_t>(std::llround(entries))) << " bytes)\n";
      }
    }
  }
  if (c.runs(SchedulerKind::Awafs) && c.runs(SchedulerKind::Static)) {
    out << "awafs vs static (reduction of the static value):\n";
    for (const auto& nc : kClasses) {
      const auto a = interval(r.select(SchedulerKind::Awafs), nc.cls, "mean_fct", c.ci);
      const auto s = interval(r.select(SchedulerKind::Static), nc.cls, "mean_fct", c.ci);
      if (!a || !s || s->mean == 0) continue;
      out << "  " << nc.name << " mean FCT: " << metrics::format_number(100.0 * (s->mean - a->mean) / s->mean, 1)
          << "%\n";
    }
  }
}

}  // namespace awafs::harness
