#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "awafs/metrics/metrics.hpp"
#include "awafs/sim/random.hpp"

using namespace awafs;
using namespace awafs::metrics;

namespace {

FlowRecord rec(net::FlowId id, std::uint64_t size, double start_s, std::optional<double> fct_s,
               std::uint32_t timeouts = 0) {
  FlowRecord r;
  r.flow_id = id;
  r.src = id % 7;
  r.dst = (id % 7) + 1;
  r.size = size;
  r.start = SimTime::from_seconds(start_s);
  if (fct_s) r.fct = SimTime::from_seconds(*fct_s);
  r.timeouts = timeouts;
  return r;
}

}  // namespace

TEST(Classify, BoundariesInDecimalKilobytes) {
  EXPECT_EQ(classify(1), FlowClass::Small);
  EXPECT_EQ(classify(100'000), FlowClass::Small);
  EXPECT_EQ(classify(100'001), FlowClass::Medium);
  EXPECT_EQ(classify(10'000'000), FlowClass::Medium);
  EXPECT_EQ(classify(10'000'001), FlowClass::Large);
}

TEST(Summarize, NearestRankTail) {
  std::vector<double> v;
  for (int i = 100; i >= 1; --i) v.push_back(i);
  auto s = summarize(v);
  ASSERT_TRUE(s);
  EXPECT_DOUBLE_EQ(s->mean, 50.5);
  EXPECT_DOUBLE_EQ(s->p99, 99.0);
  v.push_back(101);
  EXPECT_DOUBLE_EQ(summarize(v)->p99, 100.0);  // ceil(0.99 * 101) = 100
  const std::vector<double> one{3.5};
  EXPECT_DOUBLE_EQ(summarize(one)->p99, 3.5);
  EXPECT_FALSE(summarize({}).has_value());
}

TEST(Ci95, NormalAndStudentT) {
  const std::vector<double> v{1, 2, 3, 4, 5};
  // Sample standard deviation sqrt(2.5).
  const double se = std::sqrt(2.5) / std::sqrt(5.0);
  const auto n = ci95(v, CiMethod::Normal);
  ASSERT_TRUE(n);
  EXPECT_DOUBLE_EQ(n->mean, 3.0);
  EXPECT_NEAR(n->half_width, 1.96 * se, 1e-12);
  const auto t = ci95(v, CiMethod::StudentT);
  EXPECT_NEAR(t->half_width, 2.7764451051977987 * se, 1e-9);
  const std::vector<double> single{1};
  EXPECT_FALSE(ci95(single).has_value());
}

TEST(Ci95, CoversTrueMeanAtNominalRate) {
  sim::Rng rng(8);
  int covered = 0;
  const int trials = 4000;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> v(5);
    for (auto& x : v) {
      // Sum of 12 uniforms minus 6: approximately standard normal.
      double s = -6;
      for (int i = 0; i < 12; ++i) s += sim::uniform01(rng);
      x = s;
    }
    const auto c = ci95(v, CiMethod::StudentT);
    if (std::abs(c->mean) <= c->half_width) ++covered;
  }
  EXPECT_NEAR(covered / static_cast<double>(trials), 0.95, 0.015);
}

TEST(Aggregate, SplitsByClassAndDropsWarmup) {
  MetricsLedger l;
  l.add_flow(rec(0, 5000, 0.1, 0.001));  // warm-up, excluded
  l.add_flow(rec(1, 5000, 1.0, 0.002, 1));
  l.add_flow(rec(2, 7000, 1.1, 0.004));
  l.add_flow(rec(3, 2'000'000, 1.2, 0.5));
  l.add_flow(rec(4, 20'000'000, 1.3, std::nullopt, 3));
  const auto a = l.aggregate(SimTime::from_seconds(1.0));
  EXPECT_EQ(a.small.flows, 2u);
  EXPECT_EQ(a.small.completed, 2u);
  EXPECT_DOUBLE_EQ(a.small.fct->mean, 0.003);
  EXPECT_EQ(a.small.timeouts, 1u);
  EXPECT_EQ(a.medium.flows, 1u);
  EXPECT_EQ(a.large.flows, 1u);
  EXPECT_EQ(a.large.completed, 0u);
  EXPECT_FALSE(a.large.fct.has_value());
  EXPECT_EQ(a.large.timeouts, 3u);
  EXPECT_EQ(a.overall.flows, 4u);
  EXPECT_EQ(a.overall.completed, 3u);
}

TEST(Csv, SummaryOmitsEmptyClassesAndLeavesMissingStatsBlank) {
  MetricsLedger l;
  l.add_flow(rec(1, 5000, 0.0, 0.002));
  l.add_flow(rec(2, 20'000'000, 0.0, std::nullopt));
  std::ostringstream out;
  write_summary_csv(out, {"demo", 0.8, "awafs"}, l.aggregate(SimTime{}));
  const std::string s = out.str();
  EXPECT_EQ(s.rfind("scenario,load,scheduler,class,metric,value\n", 0), 0u);
  EXPECT_NE(s.find("demo,0.80,awafs,small,mean_fct,0.002000000\n"), std::string::npos);
  EXPECT_EQ(s.find(",medium,"), std::string::npos);
  EXPECT_NE(s.find("demo,0.80,awafs,large,mean_fct,\n"), std::string::npos);
  EXPECT_NE(s.find("demo,0.80,awafs,large,flows,1\n"), std::string::npos);
}

TEST(Csv, FlowsRoundTrip) {
  std::vector<FlowRecord> flows;
  sim::Rng rng(4);
  for (net::FlowId i = 0; i < 500; ++i) {
    auto r = rec(i, 1 + sim::uniform_index(rng, 50'000'000), 0, std::nullopt,
                 static_cast<std::uint32_t>(sim::uniform_index(rng, 3)));
    r.start = SimTime::from_ns(static_cast<std::int64_t>(sim::uniform_index(rng, 10'000'000'000ULL)));
    if (i % 5) r.fct = SimTime::from_ns(static_cast<std::int64_t>(1 + sim::uniform_index(rng, 2'000'000'000ULL)));
    flows.push_back(r);
  }
  std::stringstream io;
  write_flows_csv(io, flows);
  const auto back = read_flows_csv(io);
  ASSERT_EQ(back.size(), flows.size());
  for (std::size_t i = 0; i < flows.size(); ++i) {
    EXPECT_EQ(back[i].flow_id, flows[i].flow_id);
    EXPECT_EQ(back[i].size, flows[i].size);
    EXPECT_EQ(back[i].start, flows[i].start);
    EXPECT_EQ(back[i].fct, flows[i].fct);
    EXPECT_EQ(back[i].timeouts, flows[i].timeouts);
  }
  const auto a = aggregate_records(flows, SimTime::from_seconds(2.0));
  const auto b = aggregate_records(back, SimTime::from_seconds(2.0));
  EXPECT_EQ(a.overall.flows, b.overall.flows);
  EXPECT_DOUBLE_EQ(a.overall.fct->mean, b.overall.fct->mean);
}

TEST(Csv, FormatSecondsIsExact) {
  EXPECT_EQ(format_seconds(SimTime::from_ns(1)), "0.000000001");
  EXPECT_EQ(format_seconds(SimTime::from_ns(85'200)), "0.000085200");
  EXPECT_EQ(format_seconds(SimTime::from_seconds(65.0)), "65.000000000");
}

TEST(Emit, WritesThreeFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "awafs_metrics_emit";
  std::filesystem::remove_all(dir);
  MetricsLedger l;
  l.add_flow(rec(1, 5000, 0.0, 0.002));
  l.add_threshold({SimTime::from_ms(250), "leaf0", 3, 1, 9000});
  const auto paths = emit(l, {"x", 0.5, "static"}, SimTime{}, dir / "nested");
  for (const auto& p : {paths.flows, paths.summary, paths.trajectory}) EXPECT_TRUE(std::filesystem::exists(p));
  std::ifstream t(paths.trajectory);
  std::stringstream ss;
  ss << t.rdbuf();
  EXPECT_EQ(ss.str(), "time,switch,port,thr_index,bytes\n0.250000000,leaf0,3,1,9000\n");
  std::filesystem::remove_all(dir);
}

TEST(Emit, UnwritableDirectoryNamesPath) {
  const auto file = std::filesystem::temp_directory_path() / "awafs_metrics_blocker";
  std::ofstream(file) << "x";
  MetricsLedger l;
  try {
    emit(l, {"x", 0.5, "static"}, SimTime{}, file / "sub");
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("awafs_metrics_blocker"), std::string::npos);
  }
  std::filesystem::remove(file);
}

TEST(Ledger, WindowSamples) {
  MetricsLedger l;
  EXPECT_EQ(l.mean_window_entries(), 0.0);
  l.add_window_sample(10, 30);
  l.add_window_sample(20, 25);
  EXPECT_DOUBLE_EQ(l.mean_window_entries(), 15.0);
  EXPECT_EQ(l.max_window_entries(), 30u);
  EXPECT_EQ(l.window_samples(), 2u);
}
