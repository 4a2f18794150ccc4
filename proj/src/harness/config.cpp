#include "awafs/harness/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace awafs::harness {

namespace pt = boost::property_tree;

const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Overhead: return "overhead";
    case ScenarioKind::Convergence: return "convergence";
    case ScenarioKind::MismatchComparison: return "mismatch-comparison";
    case ScenarioKind::Heterogeneous: return "heterogeneous";
    case ScenarioKind::Custom: return "custom";
  }
  return "?";
}

ScenarioKind scenario_from_string(const std::string& s) {
  for (auto k : {ScenarioKind::Overhead, ScenarioKind::Convergence, ScenarioKind::MismatchComparison,
                 ScenarioKind::Heterogeneous, ScenarioKind::Custom}) {
    if (s == to_string(k)) return k;
  }
  throw ConfigError("scenario.kind: unknown scenario '" + s + "'");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fmt(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string fmt(SimTime t) { return metrics::format_seconds(t); }

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_same_v<T, SimTime> || std::is_same_v<T, double>) {
      out += fmt(v[i]);
    } else {
      out += std::to_string(v[i]);
    }
  }
  return out;
}

// Typed access to one section, remembering which keys were consumed.
class Section {
 public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  bool has(const std::string& key) {
    if (!tree_) return false;
    const bool present = tree_->find(key) != tree_->not_found();
    if (present) used_.insert(key);
    return present;
  }

  std::string raw(const std::string& key) { return trim(tree_->get<std::string>(key)); }

  [[noreturn]] void fail(const std::string& key, const std::string& why) const {
    throw ConfigError(name_ + "." + key + ": " + why);
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    return parse_number(key, raw(key));
  }

  std::uint64_t integer(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    return parse_integer(key, raw(key));
  }

  SimTime time(const std::string& key, SimTime fallback) {
    if (!has(key)) return fallback;
    return parse_time(key, raw(key));
  }

  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    return raw(key);
  }

  std::vector<std::uint64_t> integers(const std::string& key, std::vector<std::uint64_t> fallback) {
    if (!has(key)) return fallback;
    std::vector<std::uint64_t> out;
    for (const auto& item : split(raw(key))) out.push_back(parse_integer(key, item));
    return out;
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    if (!has(key)) return fallback;
    std::vector<double> out;
    for (const auto& item : split(raw(key))) out.push_back(parse_number(key, item));
    return out;
  }

  std::vector<SimTime> times(const std::string& key, std::vector<SimTime> fallback) {
    if (!has(key)) return fallback;
    std::vector<SimTime> out;
    for (const auto& item : split(raw(key))) out.push_back(parse_time(key, item));
    return out;
  }

  double parse_number(const std::string& key, const std::string& s) const {
    double v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v)) fail(key, "not a number: '" + s + "'");
    return v;
  }

  std::uint64_t parse_integer(const std::string& key, const std::string& s) const {
    std::uint64_t v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) fail(key, "not a nonnegative integer: '" + s + "'");
    return v;
  }

  SimTime parse_time(const std::string& key, const std::string& s) const {
    const double v = parse_number(key, s);
    if (v < 0) fail(key, "time must be nonnegative");
    return SimTime::from_seconds(v);
  }

  void reject_unknown() const {
    if (!tree_) return;
    for (const auto& [key, value] : *tree_) {
      if (!used_.count(key)) fail(key, "unknown key");
    }
  }

 private:
  const pt::ptree* tree_;
  std::string name_;
  std::set<std::string> used_;
};

std::vector<SchedulerKind> parse_schedulers(Section& sec, const std::string& s) {
  if (s == "both") return {SchedulerKind::Awafs, SchedulerKind::Static};
  std::vector<SchedulerKind> out;
  for (const auto& item : split(s)) {
    try {
      out.push_back(scheduler_from_string(item));
    } catch (const std::exception&) {
      sec.fail("kind", "unknown scheduler '" + item + "' (awafs, static or both)");
    }
  }
  if (out.empty()) sec.fail("kind", "empty");
  return out;
}

std::vector<workload::Phase> parse_phases(Section& sec, const std::string& s) {
  std::vector<workload::Phase> out;
  for (const auto& item : split(s)) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) sec.fail("phases", "expected 'start_seconds:workload', got '" + item + "'");
    out.push_back({sec.parse_time("phases", trim(item.substr(0, colon))), trim(item.substr(colon + 1))});
  }
  return out;
}

void rethrow_as_config(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

bool ScenarioConfig::runs(SchedulerKind s) const {
  return std::find(schedulers.begin(), schedulers.end(), s) != schedulers.end();
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& why) { throw ConfigError(field + ": " + why); };
  if (name.empty()) fail("scenario.name", "must not be empty");
  if (name.find('/') != std::string::npos) fail("scenario.name", "must not contain '/'");
  if (reps == 0) fail("scenario.reps", "must be at least 1");
  if (!(tail_pct > 0.0 && tail_pct <= 1.0)) fail("scenario.tail_pct", "must lie in (0,1]");
  if (end_time && *end_time <= SimTime{}) fail("scenario.end_time", "must be positive");
  if (kind == ScenarioKind::Overhead && window_sweep.empty()) fail("scenario.window_sweep", "required for overhead");
  rethrow_as_config([&] {
    topology.validate();
    transport.validate();
    traffic.validate();
  });
  if (schedulers.empty()) fail("scheduler.kind", "no scheduler selected");
  const std::size_t k = topology.queues_per_port;
  if (runs(SchedulerKind::Static)) {
    if (static_thresholds.empty()) fail("scheduler.thresholds", "static scheduler requires a threshold vector");
    if (!sched::valid_thresholds(static_thresholds, k)) {
      fail("scheduler.thresholds", "need queues-1 positive nondecreasing values");
    }
  }
  if (runs(SchedulerKind::Awafs)) {
    rethrow_as_config([&] { adapt.validate(k); });
    for (SimTime w : window_sweep) {
      if (w < adapt.t_schedule) fail("scenario.window_sweep", "window lengths must be >= adapt.t_schedule");
    }
  }
}

SimulationConfig ScenarioConfig::simulation(SchedulerKind s, std::uint64_t run_seed) const {
  SimulationConfig sc;
  sc.topology = topology;
  sc.transport = transport;
  sc.scheduler = s;
  sc.static_thresholds = static_thresholds;
  sc.adapt = adapt;
  if (s == SchedulerKind::Static) {
    sc.stats_interval = SimTime{};
  } else {
    sc.stats_interval = stats_interval;
  }
  sc.end_time = end_time;
  sc.seed = run_seed;
  return sc;
}

ScenarioConfig read_config(std::istream& in, const std::string& origin) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(origin + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  static const std::set<std::string> known{"scenario", "topology", "transport", "scheduler", "adapt", "traffic"};
  for (const auto& [name, sub] : tree) {
    if (!known.count(name)) throw ConfigError(name + ": unknown section");
  }
  auto section = [&](const char* name) {
    auto it = tree.find(name);
    return Section(it == tree.not_found() ? nullptr : &it->second, name);
  };

  ScenarioConfig c;

  Section sc = section("scenario");
  c.kind = scenario_from_string(sc.text("kind", to_string(c.kind)));
  c.name = sc.text("name", to_string(c.kind));
  c.seed = sc.integer("seed", c.seed);
  c.reps = static_cast<std::uint32_t>(sc.integer("reps", c.reps));
  c.out_dir = sc.text("out", c.out_dir.string());
  c.warmup = sc.time("warmup", c.warmup);
  if (sc.has("end_time")) {
    const std::string v = sc.raw("end_time");
    if (v == "none") {
      c.end_time.reset();
    } else {
      c.end_time = sc.parse_time("end_time", v);
    }
  }
  c.stats_interval = sc.time("stats_interval", c.stats_interval);
  c.window_sweep = sc.times("window_sweep", c.window_sweep);
  c.tail_pct = sc.number("tail_pct", c.tail_pct);
  {
    const std::string ci = sc.text("ci", "normal");
    if (ci == "normal") {
      c.ci = metrics::CiMethod::Normal;
    } else if (ci == "student-t") {
      c.ci = metrics::CiMethod::StudentT;
    } else {
      sc.fail("ci", "expected 'normal' or 'student-t'");
    }
  }
  sc.reject_unknown();

  Section tp = section("topology");
  auto& t = c.topology;
  t.leaf_count = static_cast<std::uint32_t>(tp.integer("leaf_count", t.leaf_count));
  t.spine_count = static_cast<std::uint32_t>(tp.integer("spine_count", t.spine_count));
  t.hosts_per_leaf = static_cast<std::uint32_t>(tp.integer("hosts_per_leaf", t.hosts_per_leaf));
  t.downlink_bps = tp.number("downlink_bps", t.downlink_bps);
  t.uplink_bps = tp.number("uplink_bps", t.uplink_bps);
  t.queues_per_port = static_cast<std::uint32_t>(tp.integer("queues", t.queues_per_port));
  if (tp.has("target_rtt")) {
    const std::string v = tp.raw("target_rtt");
    if (v == "none") {
      c.target_rtt.reset();
    } else {
      c.target_rtt = tp.parse_time("target_rtt", v);
    }
  }
  if (tp.has("prop_delay")) {
    const std::string v = tp.raw("prop_delay");
    if (v != "auto") {
      t.per_link_prop_delay = tp.parse_time("prop_delay", v);
      c.target_rtt.reset();
    }
  }
  tp.reject_unknown();

  Section tr = section("transport");
  auto& x = c.transport;
  x.mss = static_cast<std::uint32_t>(tr.integer("mss", x.mss));
  x.g = tr.number("g", x.g);
  x.initial_cwnd = tr.number("initial_cwnd", x.initial_cwnd);
  x.initial_alpha = tr.number("initial_alpha", x.initial_alpha);
  x.ecn_k_bytes = tr.integer("ecn_k_bytes", x.ecn_k_bytes);
  x.fabric_k_multiplier = tr.number("fabric_k_multiplier", x.fabric_k_multiplier);
  x.rto_min = tr.time("rto_min", x.rto_min);
  x.rto_max = tr.time("rto_max", x.rto_max);
  const bool explicit_base_rtt = tr.has("base_rtt");
  if (explicit_base_rtt) x.base_rtt = tr.time("base_rtt", x.base_rtt);
  tr.reject_unknown();

  Section sh = section("scheduler");
  if (sh.has("kind")) c.schedulers = parse_schedulers(sh, sh.raw("kind"));
  c.static_thresholds = sh.integers("thresholds", {});
  c.thresholds_from = sh.text("thresholds_from", "");
  sh.reject_unknown();

  Section ad = section("adapt");
  const std::size_t k = t.queues_per_port;
  c.adapt = adapt::AdaptParams::defaults_for(k);
  c.adapt.w_update = ad.time("w_update", c.adapt.w_update);
  c.adapt.t_schedule = ad.time("t_schedule", c.adapt.t_schedule);
  c.adapt.ref_pcts = ad.numbers("ref_pcts", c.adapt.ref_pcts);
  c.adapt.min_samples = ad.integer("min_samples", c.adapt.min_samples);
  const bool explicit_initial = ad.has("initial_thresholds");
  if (explicit_initial) c.adapt.initial_thresholds = ad.integers("initial_thresholds", {});
  ad.reject_unknown();

  Section tf = section("traffic");
  auto& plan = c.traffic;
  if (tf.has("flows")) plan.flow_count = tf.integer("flows", 0);
  if (tf.has("duration")) plan.duration = tf.time("duration", SimTime{});
  plan.load = tf.number("load", plan.load);
  try {
    plan.pairing = workload::pairing_from_string(tf.text("pairing", to_string(plan.pairing)));
  } catch (const std::exception& e) {
    tf.fail("pairing", e.what());
  }
  if (tf.has("phases")) {
    plan.phases = parse_phases(tf, tf.raw("phases"));
  } else if (tf.has("workload")) {
    plan.phases = {{SimTime{}, tf.raw("workload")}};
  }
  plan.alternate_workload = tf.text("alternate", plan.alternate_workload);
  c.cdf_dir = tf.text("cdf_dir", c.cdf_dir.string());
  tf.reject_unknown();

  if (c.target_rtt) {
    rethrow_as_config([&] { t.per_link_prop_delay = net::calibrate_rtt(t, *c.target_rtt); });
    if (!explicit_base_rtt) x.base_rtt = *c.target_rtt;
  }
  resolve_thresholds(c);
  if (!explicit_initial && !c.static_thresholds.empty()) c.adapt.initial_thresholds = c.static_thresholds;
  c.validate();
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  return read_config(in, path.string());
}

void write_config(std::ostream& out, const ScenarioConfig& c) {
  out << "[scenario]\n";
  out << "kind = " << to_string(c.kind) << "\n";
  out << "name = " << c.name << "\n";
  out << "seed = " << c.seed << "\n";
  out << "reps = " << c.reps << "\n";
  out << "out = " << c.out_dir.string() << "\n";
  out << "warmup = " << fmt(c.warmup) << "\n";
  out << "end_time = " << (c.end_time ? fmt(*c.end_time) : std::string("none")) << "\n";
  out << "stats_interval = " << fmt(c.stats_interval) << "\n";
  if (!c.window_sweep.empty()) out << "window_sweep = " << join(c.window_sweep) << "\n";
  out << "tail_pct = " << fmt(c.tail_pct) << "\n";
  out << "ci = " << (c.ci == metrics::CiMethod::Normal ? "normal" : "student-t") << "\n";

  const auto& t = c.topology;
  out << "\n[topology]\n";
  out << "leaf_count = " << t.leaf_count << "\n";
  out << "spine_count = " << t.spine_count << "\n";
  out << "hosts_per_leaf = " << t.hosts_per_leaf << "\n";
  out << "downlink_bps = " << fmt(t.downlink_bps) << "\n";
  out << "uplink_bps = " << fmt(t.uplink_bps) << "\n";
  out << "queues = " << t.queues_per_port << "\n";
  if (c.target_rtt) {
    out << "target_rtt = " << fmt(*c.target_rtt) << "\n";
    out << "prop_delay = auto\n";
  } else {
    out << "target_rtt = none\n";
    out << "prop_delay = " << fmt(t.per_link_prop_delay) << "\n";
  }

  const auto& x = c.transport;
  out << "\n[transport]\n";
  out << "mss = " << x.mss << "\n";
  out << "g = " << fmt(x.g) << "\n";
  out << "initial_cwnd = " << fmt(x.initial_cwnd) << "\n";
  out << "initial_alpha = " << fmt(x.initial_alpha) << "\n";
  out << "ecn_k_bytes = " << x.ecn_k_bytes << "\n";
  out << "fabric_k_multiplier = " << fmt(x.fabric_k_multiplier) << "\n";
  out << "rto_min = " << fmt(x.rto_min) << "\n";
  out << "rto_max = " << fmt(x.rto_max) << "\n";
  out << "base_rtt = " << fmt(x.base_rtt) << "\n";

  out << "\n[scheduler]\n";
  std::string kinds;
  for (std::size_t i = 0; i < c.schedulers.size(); ++i) kinds += (i ? "," : "") + std::string(to_string(c.schedulers[i]));
  out << "kind = " << kinds << "\n";
  if (!c.static_thresholds.empty()) out << "thresholds = " << join(c.static_thresholds) << "\n";
  if (!c.thresholds_from.empty()) out << "thresholds_from = " << c.thresholds_from << "\n";

  const auto& a = c.adapt;
  out << "\n[adapt]\n";
  out << "w_update = " << fmt(a.w_update) << "\n";
  out << "t_schedule = " << fmt(a.t_schedule) << "\n";
  out << "ref_pcts = " << join(a.ref_pcts) << "\n";
  out << "min_samples = " << a.min_samples << "\n";
  out << "initial_thresholds = " << join(a.initial_thresholds) << "\n";

  const auto& p = c.traffic;
  out << "\n[traffic]\n";
  if (p.flow_count) out << "flows = " << *p.flow_count << "\n";
  if (p.duration) out << "duration = " << fmt(*p.duration) << "\n";
  out << "load = " << fmt(p.load) << "\n";
  out << "pairing = " << to_string(p.pairing) << "\n";
  std::string phases;
  for (std::size_t i = 0; i < p.phases.size(); ++i) {
    phases += (i ? "," : "") + fmt(p.phases[i].start) + ":" + p.phases[i].workload;
  }
  out << "phases = " << phases << "\n";
  if (!p.alternate_workload.empty()) out << "alternate = " << p.alternate_workload << "\n";
  out << "cdf_dir = " << c.cdf_dir.string() << "\n";
}

std::string to_ini(const ScenarioConfig& c) {
  std::ostringstream out;
  write_config(out, c);
  return out.str();
}

workload::WorkloadCdf load_workload(const std::filesystem::path& cdf_dir, const std::string& name) {
  const bool is_path = name.find('/') != std::string::npos || std::filesystem::path(name).extension() == ".cdf";
  const std::filesystem::path path = is_path ? std::filesystem::path(name) : cdf_dir / (name + ".cdf");
  auto cdf = workload::load_cdf(path);
  return workload::WorkloadCdf(name, cdf.points(), cdf.interpolation());
}

workload::WorkloadSet load_workloads(const ScenarioConfig& c) {
  workload::WorkloadSet set;
  for (const auto& name : c.traffic.workloads()) {
    if (!set.count(name)) set.emplace(name, load_workload(c.cdf_dir, name));
  }
  return set;
}

std::vector<std::uint64_t> derive_static_thresholds(const workload::WorkloadCdf& cdf, std::size_t k) {
  if (k < 2) throw std::invalid_argument("derive_static_thresholds: need k >= 2");
  std::vector<std::uint64_t> out;
  for (std::size_t j = 1; j < k; ++j) {
    const double q = cdf.quantile(static_cast<double>(j) / static_cast<double>(k));
    out.push_back(std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(q - 1e-6))));
  }
  return out;
}

void resolve_thresholds(ScenarioConfig& c) {
  if (c.thresholds_from.empty() || !c.static_thresholds.empty()) return;
  try {
    c.static_thresholds = derive_static_thresholds(load_workload(c.cdf_dir, c.thresholds_from),
                                                   c.topology.queues_per_port);
  } catch (const workload::CdfError& e) {
    throw ConfigError(std::string("scheduler.thresholds_from: ") + e.what());
  }
}

void set_queue_count(ScenarioConfig& c, std::uint32_t k) {
  c.topology.queues_per_port = k;
  const auto defaults = adapt::AdaptParams::defaults_for(k);
  c.adapt.ref_pcts = defaults.ref_pcts;
  c.adapt.min_samples = defaults.min_samples;
  c.adapt.initial_thresholds = defaults.initial_thresholds;
  if (!c.thresholds_from.empty()) {
    c.static_thresholds.clear();
    resolve_thresholds(c);
  }
  if (!c.static_thresholds.empty() && c.static_thresholds.size() + 1 == k) {
    c.adapt.initial_thresholds = c.static_thresholds;
  }
}

namespace {

ScenarioConfig desk_base(ScenarioKind kind, const std::filesystem::path& cdf_dir) {
  ScenarioConfig c;
  c.kind = kind;
  c.name = to_string(kind);
  c.cdf_dir = cdf_dir;
  c.topology = net::TopologyConfig::desk_scale();
  c.target_rtt = net::kPaperBaseRtt;
  c.transport.base_rtt = net::kPaperBaseRtt;
  return c;
}

}  // namespace

ScenarioConfig scenario_preset(ScenarioKind kind, int variant, const std::filesystem::path& cdf_dir) {
  ScenarioConfig c = desk_base(kind, cdf_dir);
  switch (kind) {
    case ScenarioKind::Overhead: {
      c.schedulers = {SchedulerKind::Awafs};
      c.thresholds_from = "data_mining";
      c.traffic.load = 0.9;
      c.traffic.duration = SimTime::from_seconds(4.0);
      c.traffic.phases = {{SimTime{}, "data_mining"}, {SimTime::from_seconds(2.0), "web_search"}};
      c.end_time = SimTime::from_seconds(4.0);
      c.warmup = SimTime::from_seconds(0.5);
      c.window_sweep = {SimTime::from_ms(250), SimTime::from_ms(500), SimTime::from_ms(750), SimTime::from_seconds(1)};
      set_queue_count(c, 8);
      break;
    }
    case ScenarioKind::Convergence: {
      c.schedulers = {SchedulerKind::Awafs};
      c.traffic.load = 0.9;
      c.traffic.duration = SimTime::from_seconds(8.0);
      c.traffic.phases = {{SimTime{}, "data_mining"}, {SimTime::from_seconds(3.0), "web_search"}};
      c.end_time = SimTime::from_seconds(8.0);
      c.warmup = SimTime::from_seconds(1.0);
      set_queue_count(c, 4);
      c.adapt.w_update = SimTime::from_seconds(1);
      c.adapt.t_schedule = SimTime::from_ms(250);
      c.adapt.ref_pcts = {0.1, 0.2, 0.3};
      c.adapt.initial_thresholds = {7000, 14000, 21000};
      break;
    }
    case ScenarioKind::MismatchComparison: {
      static const std::pair<const char*, const char*> pairs[] = {
          {"web_search", "data_mining"}, {"data_mining", "web_search"}, {"cache", "data_mining"}, {"hadoop", "data_mining"}};
      if (variant < 1 || variant > 4) throw ConfigError("scenario.variant: mismatch-comparison has variants 1-4");
      const auto [traffic, thresholds] = pairs[variant - 1];
      c.name = "mismatch-" + std::to_string(variant);
      c.schedulers = {SchedulerKind::Awafs, SchedulerKind::Static};
      c.thresholds_from = thresholds;
      c.traffic.load = 0.8;
      c.traffic.flow_count = 10000;
      c.traffic.phases = {{SimTime{}, traffic}};
      c.warmup = SimTime::from_seconds(1.0);
      c.reps = 5;
      set_queue_count(c, 8);
      break;
    }
    case ScenarioKind::Heterogeneous: {
      c.schedulers = {SchedulerKind::Awafs, SchedulerKind::Static};
      c.thresholds_from = "web_search";
      c.traffic.load = 0.8;
      c.traffic.duration = SimTime::from_seconds(5.0);
      c.traffic.pairing = workload::Pairing::HeterogeneousIJ;
      c.traffic.phases = {{SimTime{}, "web_search"}};
      c.traffic.alternate_workload = "data_mining";
      c.end_time = SimTime::from_seconds(7.0);
      c.warmup = SimTime::from_seconds(1.0);
      c.reps = 3;
      set_queue_count(c, 8);
      // Ports fed mostly by Data Mining see ~13 completions per second at 1 Gbps.
      c.adapt.min_samples = 7;
      break;
    }
    case ScenarioKind::Custom: {
      c.schedulers = {SchedulerKind::Awafs};
      c.traffic.load = 0.8;
      c.traffic.flow_count = 1000;
      c.traffic.phases = {{SimTime{}, "web_search"}};
      set_queue_count(c, 8);
      break;
    }
  }
  c.validate();
  return c;
}

}  // namespace awafs::harness
