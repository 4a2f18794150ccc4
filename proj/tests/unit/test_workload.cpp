#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "awafs/sim/random.hpp"
#include "awafs/workload/cdf.hpp"
#include "awafs/workload/generator.hpp"

using namespace awafs;
using namespace awafs::workload;
using sim::SimTime;

namespace {

const std::vector<std::string> kWorkloads{"web_search", "data_mining", "cache", "hadoop", "bimodal_10k", "bimodal_20k"};

WorkloadCdf load(const std::string& name) {
  return load_cdf(std::filesystem::path(AWAFS_DATA_DIR) / (name + ".cdf"));
}

WorkloadCdf parse(const std::string& text) {
  std::istringstream in(text);
  return WorkloadCdf::parse(in, "t", "t.cdf");
}

std::string parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const CdfError& e) {
    return e.what();
  }
  return "";
}

// E[X] = integral of the survival function, by midpoint rule on each segment.
double survival_integral(const WorkloadCdf& c) {
  double total = 0;
  double prev = 0;
  for (const auto& p : c.points()) {
    const double lo = prev, hi = static_cast<double>(p.size);
    const int steps = 20'000;
    const double h = (hi - lo) / steps;
    for (int i = 0; i < steps; ++i) total += (1.0 - c.cdf(lo + (i + 0.5) * h)) * h;
    prev = hi;
  }
  return total;
}

WorkloadSet set_of(std::initializer_list<std::string> names) {
  WorkloadSet s;
  for (const auto& n : names) s.emplace(n, load(n));
  return s;
}

TrafficPlan plan_for(const std::string& w) {
  TrafficPlan p;
  p.phases = {{SimTime{}, w}};
  p.load = 0.5;
  return p;
}

}  // namespace

TEST(Cdf, ParsesCommentsAndBlankLines) {
  const auto c = parse("# header\n\n100 0.5  # half\n  200 1.0\n");
  ASSERT_EQ(c.points().size(), 2u);
  EXPECT_EQ(c.interpolation(), Interpolation::Linear);
  EXPECT_DOUBLE_EQ(c.cdf(150), 0.75);
  EXPECT_DOUBLE_EQ(c.cdf(100), 0.5);
  EXPECT_DOUBLE_EQ(c.cdf(99), 0.0);
}

TEST(Cdf, StepDirective) {
  const auto c = parse("#@ interpolation step\n10 0.9\n1000 1\n");
  EXPECT_EQ(c.interpolation(), Interpolation::Step);
  EXPECT_DOUBLE_EQ(c.cdf(500), 0.9);
  EXPECT_DOUBLE_EQ(c.quantile(0.95), 1000.0);
  EXPECT_DOUBLE_EQ(c.quantile(0.5), 10.0);
  EXPECT_DOUBLE_EQ(mean_size(c), 0.9 * 10 + 0.1 * 1000);
}

TEST(Cdf, ErrorsCarryLineNumbers) {
  EXPECT_NE(parse_error("100 0.5\n50 1.0\n").find("t.cdf:2"), std::string::npos);
  EXPECT_NE(parse_error("100 0.6\n200 0.5\n300 1\n").find("t.cdf:2"), std::string::npos);
  EXPECT_NE(parse_error("100 0.5\n200 0.9\n").find("last cumulative"), std::string::npos);
  EXPECT_NE(parse_error("100 abc\n").find("t.cdf:1"), std::string::npos);
  EXPECT_NE(parse_error("100\n").find("t.cdf:1"), std::string::npos);
  EXPECT_NE(parse_error("# nothing\n").find("no points"), std::string::npos);
  EXPECT_NE(parse_error("#@ interpolation cubic\n1 1\n").find("cubic"), std::string::npos);
  EXPECT_THROW(load_cdf("/nonexistent/x.cdf"), CdfError);
}

TEST(Cdf, BundledFilesLoadAndAreMonotone) {
  for (const auto& name : kWorkloads) {
    const auto c = load(name);
    EXPECT_EQ(c.name(), name);
    double prev = 0;
    for (double s = 1; s <= static_cast<double>(c.max_size()) * 1.01; s *= 1.05) {
      const double v = c.cdf(s);
      ASSERT_GE(v, prev) << name;
      ASSERT_LE(v, 1.0);
      prev = v;
    }
    EXPECT_EQ(c.cdf(static_cast<double>(c.max_size())), 1.0);
  }
}

TEST(Cdf, QuantileInvertsCdf) {
  for (const auto& name : {"web_search", "data_mining", "cache", "hadoop"}) {
    const auto c = load(name);
    for (double p = 0.001; p < 1.0; p += 0.001) {
      const double q = c.quantile(p);
      ASSERT_GE(c.cdf(q), p - 1e-9) << name << " p=" << p;
      if (p > c.points().front().cum_prob) {
        ASSERT_NEAR(c.cdf(q), p, 1e-9) << name << " p=" << p;
      }
    }
  }
}

TEST(Cdf, MeanMatchesSurvivalIntegral) {
  for (const auto& name : {"web_search", "data_mining", "cache", "hadoop"}) {
    const auto c = load(name);
    EXPECT_NEAR(mean_size(c) / survival_integral(c), 1.0, 1e-6) << name;
  }
}

TEST(Cdf, DataMiningIsMostlySmall) {
  const auto c = load("data_mining");
  EXPECT_GE(c.cdf(10'000), 0.75);
  EXPECT_LE(c.cdf(10'000), 0.85);
}

TEST(Cdf, SamplesMatchDistribution) {
  // Kolmogorov-Smirnov distance between 1e5 draws and the source CDF.
  for (const auto& name : kWorkloads) {
    const auto c = load(name);
    sim::Rng rng(101);
    std::vector<double> xs(100'000);
    for (auto& x : xs) x = static_cast<double>(inverse_sample(c, sim::uniform01(rng)));
    std::sort(xs.begin(), xs.end());
    double d = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i + 1 < xs.size() && xs[i + 1] == xs[i]) continue;
      const double f = c.cdf(xs[i]);
      d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
      const std::size_t first = std::lower_bound(xs.begin(), xs.end(), xs[i]) - xs.begin();
      d = std::max(d, std::abs(static_cast<double>(first) / n - c.cdf(std::nextafter(xs[i], 0.0))));
    }
    EXPECT_LE(d, 0.01) << name;
  }
}

TEST(Generator, ArrivalRateFormula) {
  EXPECT_DOUBLE_EQ(arrival_rate(0.5, 1e9, 1250), 50'000.0);
  EXPECT_DOUBLE_EQ(arrival_rate(0.8, 10e9, 1e6), 1000.0);
}

TEST(Generator, FlowCountAndOrdering) {
  auto plan = plan_for("web_search");
  plan.flow_count = 5000;
  const auto flows = generate(plan, set_of({"web_search"}), 32, 1e9, 7);
  ASSERT_EQ(flows.size(), 5000u);
  for (std::size_t i = 0; i < flows.size(); ++i) {
    EXPECT_EQ(flows[i].flow_id, i);
    EXPECT_NE(flows[i].src_host, flows[i].dst_host);
    EXPECT_LT(flows[i].src_host, 32u);
    EXPECT_GE(flows[i].size, 1u);
    if (i > 0) {
      EXPECT_GE(flows[i].start_time, flows[i - 1].start_time);
    }
  }
}

TEST(Generator, DeterministicPerSeed) {
  auto plan = plan_for("data_mining");
  plan.flow_count = 2000;
  const auto ws = set_of({"data_mining"});
  EXPECT_EQ(generate(plan, ws, 16, 1e9, 3), generate(plan, ws, 16, 1e9, 3));
  EXPECT_NE(generate(plan, ws, 16, 1e9, 3), generate(plan, ws, 16, 1e9, 4));
}

TEST(Generator, PoissonRatePerDestination) {
  auto plan = plan_for("bimodal_10k");
  plan.duration = SimTime::from_seconds(20);
  const auto ws = set_of({"bimodal_10k"});
  const auto flows = generate(plan, ws, 8, 1e9, 11);
  const double rate = arrival_rate(0.5, 1e9, mean_size(ws.at("bimodal_10k")));
  std::map<std::uint32_t, int> per_dst;
  for (const auto& f : flows) {
    ++per_dst[f.dst_host];
    EXPECT_LT(f.start_time, SimTime::from_seconds(20));
  }
  for (const auto& [dst, n] : per_dst) {
    const double expect = rate * 20;
    EXPECT_NEAR(n, expect, 5 * std::sqrt(expect)) << "dst " << dst;
  }
  EXPECT_EQ(per_dst.size(), 8u);
  // Offered bytes per destination match the load.
  std::map<std::uint32_t, double> bytes;
  for (const auto& f : flows) bytes[f.dst_host] += static_cast<double>(f.size);
  double total = 0;
  for (const auto& [dst, b] : bytes) total += b;
  EXPECT_NEAR(total * 8 / (20.0 * 8 * 1e9), 0.5, 0.05);
}

TEST(Generator, SourcesUniformOverOtherHosts) {
  auto plan = plan_for("bimodal_10k");
  plan.flow_count = 40'000;
  const auto flows = generate(plan, set_of({"bimodal_10k"}), 4, 1e9, 2);
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> pairs;
  std::map<std::uint32_t, int> dsts;
  for (const auto& f : flows) {
    ++pairs[{f.src_host, f.dst_host}];
    ++dsts[f.dst_host];
  }
  EXPECT_EQ(pairs.size(), 12u);
  for (const auto& [pair, n] : pairs) {
    EXPECT_NEAR(static_cast<double>(n) / dsts[pair.second], 1.0 / 3.0, 0.02);
  }
}

TEST(Generator, PhaseSwitchChangesDistribution) {
  TrafficPlan plan;
  plan.phases = {{SimTime{}, "bimodal_10k"}, {SimTime::from_seconds(1.0), "bimodal_20k"}};
  plan.duration = SimTime::from_seconds(2.0);
  plan.load = 0.5;
  const auto flows = generate(plan, set_of({"bimodal_10k", "bimodal_20k"}), 8, 1e9, 5);
  std::set<std::uint64_t> before, after;
  for (const auto& f : flows) (f.start_time < SimTime::from_seconds(1.0) ? before : after).insert(f.size);
  EXPECT_EQ(before, (std::set<std::uint64_t>{10'000, 10'000'000}));
  EXPECT_EQ(after, (std::set<std::uint64_t>{20'000, 10'000'000}));
}

TEST(Generator, HeterogeneousPairingByHostOrder) {
  TrafficPlan plan;
  plan.phases = {{SimTime{}, "bimodal_10k"}};
  plan.alternate_workload = "bimodal_20k";
  plan.pairing = Pairing::HeterogeneousIJ;
  plan.flow_count = 5000;
  plan.load = 0.5;
  const auto flows = generate(plan, set_of({"bimodal_10k", "bimodal_20k"}), 8, 1e9, 9);
  for (const auto& f : flows) {
    if (f.size == 10'000'000) continue;
    EXPECT_EQ(f.size, f.src_host < f.dst_host ? 10'000u : 20'000u);
  }
  EXPECT_EQ(workload_for_pair(plan, 0, 1, 2), "bimodal_10k");
  EXPECT_EQ(workload_for_pair(plan, 0, 2, 1), "bimodal_20k");
}

TEST(Generator, PlanValidation) {
  TrafficPlan plan = plan_for("web_search");
  EXPECT_THROW(plan.validate(), std::invalid_argument);  // no bound
  plan.flow_count = 10;
  plan.load = 1.0;
  EXPECT_THROW(plan.validate(), std::invalid_argument);
  plan.load = 0.5;
  plan.phases.front().start = SimTime::from_ms(1);
  EXPECT_THROW(plan.validate(), std::invalid_argument);
  plan.phases.front().start = SimTime{};
  EXPECT_THROW(generate(plan, set_of({"data_mining"}), 8, 1e9, 1), std::invalid_argument);
  EXPECT_EQ(pairing_from_string("heterogeneous-ij"), Pairing::HeterogeneousIJ);
  EXPECT_THROW(pairing_from_string("ring"), std::invalid_argument);
}
