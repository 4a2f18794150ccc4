#include "awafs/metrics/metrics.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace awafs::metrics {

FlowClass classify(std::uint64_t size) {
  if (size <= kSmallLimitBytes) return FlowClass::Small;
  if (size <= kMediumLimitBytes) return FlowClass::Medium;
  return FlowClass::Large;
}

const char* to_string(FlowClass c) {
  switch (c) {
    case FlowClass::Small:
      return "small";
    case FlowClass::Medium:
      return "medium";
    case FlowClass::Large:
      return "large";
  }
  return "?";
}

std::optional<Summary> summarize(std::span<const double> samples, double tail_pct) {
  if (samples.empty()) return std::nullopt;
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  Summary s;
  s.count = sorted.size();
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.count);
  auto rank = static_cast<std::size_t>(std::ceil(tail_pct * static_cast<double>(s.count) - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, s.count);
  s.p99 = sorted[rank - 1];
  return s;
}

std::optional<Interval> ci95(std::span<const double> v, CiMethod method) {
  if (v.size() < 2) return std::nullopt;
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1));
  double z = 1.96;
  if (method == CiMethod::StudentT) {
    boost::math::students_t dist(n - 1);
    z = boost::math::quantile(boost::math::complement(dist, 0.025));
  }
  return Interval{mean, z * sd / std::sqrt(n)};
}

const ClassStats& RunAggregates::of(FlowClass c) const {
  switch (c) {
    case FlowClass::Small:
      return small;
    case FlowClass::Medium:
      return medium;
    case FlowClass::Large:
      return large;
  }
  return overall;
}

void MetricsLedger::add_window_sample(double mean_entries, std::size_t max_entries) {
  window_entries_sum_ += mean_entries;
  ++window_samples_;
  max_window_entries_ = std::max(max_window_entries_, max_entries);
}

double MetricsLedger::mean_window_entries() const {
  return window_samples_ == 0 ? 0.0 : window_entries_sum_ / static_cast<double>(window_samples_);
}

RunAggregates aggregate_records(std::span<const FlowRecord> flows, SimTime warmup, double tail_pct) {
  std::vector<double> fcts[4];
  RunAggregates agg;
  ClassStats* stats[4] = {&agg.small, &agg.medium, &agg.large, &agg.overall};
  for (const auto& f : flows) {
    if (f.start < warmup) continue;
    const auto c = static_cast<std::size_t>(classify(f.size));
    for (std::size_t slot : {c, std::size_t{3}}) {
      ++stats[slot]->flows;
      stats[slot]->timeouts += f.timeouts;
      if (f.fct) {
        ++stats[slot]->completed;
        fcts[slot].push_back(f.fct->seconds());
      }
    }
  }
  for (std::size_t i = 0; i < 4; ++i) stats[i]->fct = summarize(fcts[i], tail_pct);
  return agg;
}

RunAggregates MetricsLedger::aggregate(SimTime warmup, double tail_pct) const {
  return aggregate_records(flows_, warmup, tail_pct);
}

std::string format_number(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string format_seconds(SimTime t) {
  // Exact decimal rendering of integer nanoseconds.
  const std::int64_t ns = t.ns();
  const std::int64_t whole = ns / 1'000'000'000;
  const std::int64_t frac = std::abs(ns % 1'000'000'000);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%lld.%09lld", (ns < 0 && whole == 0) ? "-" : "", static_cast<long long>(whole),
                static_cast<long long>(frac));
  return buf;
}

void write_flows_csv(std::ostream& out, std::span<const FlowRecord> flows) {
  out << "flow_id,src,dst,size,class,start,fct,timeouts\n";
  for (const auto& f : flows) {
    out << f.flow_id << ',' << f.src << ',' << f.dst << ',' << f.size << ',' << to_string(classify(f.size)) << ','
        << format_seconds(f.start) << ',' << (f.fct ? format_seconds(*f.fct) : std::string()) << ',' << f.timeouts
        << '\n';
  }
}

void write_summary_csv(std::ostream& out, const SummaryKey& key, const RunAggregates& agg) {
  out << "scenario,load,scheduler,class,metric,value\n";
  auto row = [&](const char* cls, const char* metric, const std::string& value) {
    out << key.scenario << ',' << format_number(key.load, 2) << ',' << key.scheduler << ',' << cls << ',' << metric
        << ',' << value << '\n';
  };
  auto block = [&](const char* cls, const ClassStats& s) {
    // Classes without flows are omitted; absent statistics are written as
    // empty values, never as zero.
    if (s.flows == 0) return;
    row(cls, "mean_fct", s.fct ? format_number(s.fct->mean) : "");
    row(cls, "p99_fct", s.fct ? format_number(s.fct->p99) : "");
    row(cls, "flows", std::to_string(s.flows));
    row(cls, "completed", std::to_string(s.completed));
    row(cls, "timeouts", std::to_string(s.timeouts));
  };
  block("small", agg.small);
  block("medium", agg.medium);
  block("large", agg.large);
  block("overall", agg.overall);
}

void write_trajectory_csv(std::ostream& out, std::span<const ThresholdSample> samples) {
  out << "time,switch,port,thr_index,bytes\n";
  for (const auto& s : samples) {
    out << format_seconds(s.time) << ',' << s.switch_name << ',' << s.port << ',' << s.thr_index << ',' << s.bytes
        << '\n';
  }
}

namespace {

SimTime parse_seconds(const std::string& s) {
  // Exact inverse of format_seconds for non-negative values.
  const auto dot = s.find('.');
  if (dot == std::string::npos) return SimTime::from_ns(std::stoll(s) * 1'000'000'000);
  std::string frac = s.substr(dot + 1);
  frac.resize(9, '0');
  return SimTime::from_ns(std::stoll(s.substr(0, dot)) * 1'000'000'000 + std::stoll(frac));
}

}  // namespace

std::vector<FlowRecord> read_flows_csv(std::istream& in) {
  std::vector<FlowRecord> out;
  std::string line;
  if (!std::getline(in, line)) return out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
    if (cols.size() == 7) cols.emplace_back();  // trailing empty field
    if (cols.size() != 8) throw std::runtime_error("flows csv: bad row '" + line + "'");
    FlowRecord r;
    r.flow_id = static_cast<net::FlowId>(std::stoul(cols[0]));
    r.src = static_cast<net::HostId>(std::stoul(cols[1]));
    r.dst = static_cast<net::HostId>(std::stoul(cols[2]));
    r.size = std::stoull(cols[3]);
    r.start = parse_seconds(cols[5]);
    if (!cols[6].empty()) r.fct = parse_seconds(cols[6]);
    r.timeouts = static_cast<std::uint32_t>(std::stoul(cols[7]));
    out.push_back(r);
  }
  return out;
}

EmitPaths emit(const MetricsLedger& ledger, const SummaryKey& key, SimTime warmup,
               const std::filesystem::path& dir, double tail_pct) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error(dir.string() + ": cannot create directory: " + ec.message());
  EmitPaths paths{dir / "flows.csv", dir / "summary.csv", dir / "thresholds.csv"};
  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error(p.string() + ": cannot open for writing");
    return f;
  };
  {
    auto f = open(paths.flows);
    write_flows_csv(f, ledger.flows());
    if (!f) throw std::runtime_error(paths.flows.string() + ": write failed");
  }
  {
    auto f = open(paths.summary);
    write_summary_csv(f, key, ledger.aggregate(warmup, tail_pct));
    if (!f) throw std::runtime_error(paths.summary.string() + ": write failed");
  }
  {
    auto f = open(paths.trajectory);
    write_trajectory_csv(f, ledger.trajectory());
    if (!f) throw std::runtime_error(paths.trajectory.string() + ": write failed");
  }
  return paths;
}

}  // namespace awafs::metrics
