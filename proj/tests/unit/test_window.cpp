#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "awafs/adapt/adapt.hpp"
#include "awafs/adapt/window.hpp"
#include "awafs/sim/random.hpp"

using namespace awafs;
using namespace awafs::adapt;
using sim::SimTime;

namespace {

// Smallest x in `sizes` with #{s <= x} * den >= num * n, exact integer arithmetic.
std::uint64_t counting_percentile(const std::vector<std::uint64_t>& sizes, std::uint64_t num, std::uint64_t den) {
  std::uint64_t best = ~0ULL;
  for (auto x : sizes) {
    const auto at_most = static_cast<std::uint64_t>(std::count_if(sizes.begin(), sizes.end(), [&](auto s) { return s <= x; }));
    if (at_most * den >= num * sizes.size()) best = std::min(best, x);
  }
  return best;
}

}  // namespace

TEST(Window, PruneDropsOnlyStaleHead) {
  CompletedFlowWindow w;
  w.record(SimTime::from_ms(100), 1);
  w.record(SimTime::from_ms(600), 2);
  w.record(SimTime::from_ms(900), 3);
  EXPECT_EQ(w.prune(SimTime::from_ms(1600), SimTime::from_seconds(1.0)), 1u);
  EXPECT_EQ(w.sizes(), (std::vector<std::uint64_t>{2, 3}));
  // Exactly W old stays.
  EXPECT_EQ(w.prune(SimTime::from_ms(1600), SimTime::from_seconds(1.0)), 0u);
}

TEST(Window, RejectsOutOfOrderRecord) {
  CompletedFlowWindow w;
  w.record(SimTime::from_ms(5), 1);
  w.record(SimTime::from_ms(5), 2);
  EXPECT_THROW(w.record(SimTime::from_ms(4), 3), std::invalid_argument);
}

TEST(Window, CountWithinAgreesWithPrune) {
  sim::Rng rng(2);
  CompletedFlowWindow w;
  SimTime t;
  for (int i = 0; i < 3000; ++i) {
    t += SimTime::from_us(static_cast<std::int64_t>(sim::uniform_index(rng, 1000)));
    w.record(t, i);
  }
  const SimTime span = SimTime::from_ms(300);
  const std::size_t expect = w.count_within(t, span);
  CompletedFlowWindow copy = w;
  copy.prune(t, span);
  EXPECT_EQ(copy.size(), expect);
  for (const auto& r : copy.entries()) EXPECT_GE(r.ts, t - span);
}

TEST(Window, FootprintIsTwelveBytesPerRecord) {
  EXPECT_EQ(footprint_bytes(650), 7800u);
  CompletedFlowWindow w;
  for (int i = 0; i < 10; ++i) w.record(SimTime::from_ms(i), 1);
  EXPECT_EQ(window_footprint(w), 120u);
}

TEST(Percentiles, NearestRankBoundaries) {
  EXPECT_EQ(nearest_rank(0.1, 10), 1u);
  EXPECT_EQ(nearest_rank(0.7, 10), 7u);
  EXPECT_EQ(nearest_rank(0.11, 10), 2u);
  EXPECT_EQ(nearest_rank(0.5, 1), 1u);
  EXPECT_EQ(nearest_rank(0.99, 100), 99u);
}

TEST(Percentiles, EmptyInputIsNullopt) {
  const std::vector<double> ref{0.5};
  EXPECT_FALSE(percentile_thresholds({}, ref).has_value());
}

TEST(Percentiles, MatchCountingOracle) {
  sim::Rng rng(31);
  const std::vector<double> ref{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + sim::uniform_index(rng, 200);
    std::vector<std::uint64_t> sizes(n);
    for (auto& s : sizes) s = 1 + sim::uniform_index(rng, trial % 2 ? 50 : 10'000'000);
    const auto got = percentile_thresholds(sizes, ref);
    ASSERT_TRUE(got.has_value());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      ASSERT_EQ((*got)[i], counting_percentile(sizes, i + 1, 10)) << "n=" << n << " i=" << i;
    }
    ASSERT_TRUE(std::is_sorted(got->begin(), got->end()));
  }
}

TEST(AdaptParams, DefaultsScaleWithQueues) {
  const auto p = AdaptParams::defaults_for(8);
  EXPECT_EQ(p.min_samples, 28u);
  EXPECT_EQ(p.ref_pcts, (std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7}));
  EXPECT_EQ(p.initial_thresholds.size(), 7u);
  EXPECT_NO_THROW(p.validate(8));
  EXPECT_EQ(AdaptParams::defaults_for(4).min_samples, 12u);
}

TEST(AdaptParams, ValidationNamesField) {
  auto p = AdaptParams::defaults_for(4);
  p.ref_pcts = {0.3, 0.2, 0.1};
  try {
    p.validate(4);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("adapt.ref_pcts"), std::string::npos);
  }
  p = AdaptParams::defaults_for(4);
  p.w_update = SimTime::from_ms(100);
  EXPECT_THROW(p.validate(4), std::invalid_argument);
}

TEST(AdaptTick, SkipsBelowMinSamples) {
  auto params = AdaptParams::defaults_for(4);
  sched::PortOptions opts;
  opts.sense_completions = true;
  sched::PortScheduler port(4, params.initial_thresholds, opts);
  for (int i = 0; i < 11; ++i) port.window().record(SimTime::from_ms(i), 1000 * (i + 1));
  const auto out = adapt_tick(port, SimTime::from_ms(20), params);
  EXPECT_FALSE(out.updated);
  EXPECT_EQ(out.samples, 11u);
  EXPECT_EQ(port.thresholds(), params.initial_thresholds);
}

TEST(AdaptTick, InstallsPercentilesOfWindow) {
  auto params = AdaptParams::defaults_for(4);
  sched::PortScheduler port(4, params.initial_thresholds);
  std::vector<std::uint64_t> sizes;
  for (int i = 0; i < 20; ++i) {
    sizes.push_back(1000 * (20 - i));
    port.window().record(SimTime::from_ms(i), sizes.back());
  }
  const auto out = adapt_tick(port, SimTime::from_ms(500), params);
  EXPECT_TRUE(out.updated);
  EXPECT_EQ(port.thresholds(), (std::vector<std::uint64_t>{counting_percentile(sizes, 1, 10),
                                                           counting_percentile(sizes, 2, 10),
                                                           counting_percentile(sizes, 3, 10)}));
  EXPECT_EQ(port.thresholds(), (std::vector<std::uint64_t>{2000, 4000, 6000}));
}

TEST(AdaptTick, PrunesBeforeCounting) {
  auto params = AdaptParams::defaults_for(2);
  params.min_samples = 2;
  sched::PortScheduler port(2, {7000});
  port.window().record(SimTime::from_ms(0), 50);
  port.window().record(SimTime::from_ms(1), 60);
  port.window().record(SimTime::from_ms(1500), 900);
  const auto out = adapt_tick(port, SimTime::from_ms(1800), params);
  EXPECT_EQ(out.dropped, 2u);
  EXPECT_FALSE(out.updated);
  EXPECT_EQ(port.thresholds(), std::vector<std::uint64_t>{7000});
}
