#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "awafs/sim/random.hpp"
#include "awafs/transport/dctcp.hpp"

using namespace awafs;
using namespace awafs::transport;
using sim::SimTime;

namespace {

FlowSpec spec(std::uint64_t size) {
  FlowSpec s;
  s.flow_id = 3;
  s.src_host = 0;
  s.dst_host = 1;
  s.size = size;
  return s;
}

// Sends a full window and acknowledges every packet in order, marking the
// first `marked` echoes. Returns the outcome of the last ACK.
AckOutcome round_trip(FlowState& f, const TransportParams& p, SimTime& now, std::size_t marked) {
  const auto pkts = on_send_opportunity(f, now, p);
  now += SimTime::from_us(100);
  AckOutcome last;
  for (std::size_t i = 0; i < pkts.size(); ++i) {
    Packet d = pkts[i];
    d.ecn_ce = i < marked;
    last = on_ack(f, make_ack(d, d.seq_no + d.payload), now, p);
  }
  return last;
}

}  // namespace

TEST(Ecn, MarksOnlyAboveThreshold) {
  Packet p;
  p.size = 1500;
  EXPECT_FALSE(ecn_mark_on_enqueue(97'500, 97'500, p));
  EXPECT_FALSE(p.ecn_ce);
  EXPECT_TRUE(ecn_mark_on_enqueue(97'501, 97'500, p));
  EXPECT_TRUE(p.ecn_ce);
  Packet ack;
  ack.is_ack = true;
  EXPECT_FALSE(ecn_mark_on_enqueue(1'000'000, 97'500, ack));
  EXPECT_FALSE(ack.ecn_ce);
}

TEST(Dctcp, OpensWithInitialWindowAndRto) {
  TransportParams p;
  const auto f = open_flow(spec(100'000), p);
  EXPECT_EQ(f.cwnd, 10.0);
  EXPECT_EQ(f.alpha, 0.0);
  EXPECT_EQ(f.rto, SimTime::from_ms(5));
  p.base_rtt = SimTime::from_ms(3);
  EXPECT_EQ(open_flow(spec(100'000), p).rto, SimTime::from_ms(9));
}

TEST(Dctcp, RejectsDegenerateFlows) {
  TransportParams p;
  EXPECT_THROW(open_flow(spec(0), p), std::invalid_argument);
  auto s = spec(10);
  s.dst_host = s.src_host;
  EXPECT_THROW(open_flow(s, p), std::invalid_argument);
}

TEST(Dctcp, FirstWindowSegmentsAndEndMark) {
  TransportParams p;
  auto f = open_flow(spec(20'000), p);
  const auto pkts = on_send_opportunity(f, SimTime{}, p);
  ASSERT_EQ(pkts.size(), 10u);
  for (std::size_t i = 0; i < pkts.size(); ++i) {
    EXPECT_EQ(pkts[i].seq_no, i * 1460);
    EXPECT_EQ(pkts[i].size, 1500u);
    EXPECT_FALSE(pkts[i].flow_end_mark);
  }

  auto tiny = open_flow(spec(1), p);
  const auto one = on_send_opportunity(tiny, SimTime{}, p);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].size, 41u);
  EXPECT_TRUE(one[0].flow_end_mark);
  EXPECT_EQ(one[0].final_size, 1u);
}

TEST(Dctcp, LastSegmentCarriesRemainder) {
  TransportParams p;
  auto f = open_flow(spec(2 * 1460 + 7), p);
  const auto pkts = on_send_opportunity(f, SimTime{}, p);
  ASSERT_EQ(pkts.size(), 3u);
  EXPECT_EQ(pkts[2].payload, 7u);
  EXPECT_TRUE(pkts[2].flow_end_mark);
  EXPECT_EQ(pkts[2].final_size, 2u * 1460 + 7);
}

TEST(Dctcp, UnmarkedWindowGrowsByOne) {
  TransportParams p;
  auto f = open_flow(spec(10'000'000), p);
  SimTime now;
  const auto out = round_trip(f, p, now, 0);
  EXPECT_TRUE(out.window_closed);
  EXPECT_EQ(f.cwnd, 11.0);
  EXPECT_EQ(f.alpha, 0.0);
}

TEST(Dctcp, AlphaFollowsEwmaOracle) {
  TransportParams p;
  auto f = open_flow(spec(1'000'000'000), p);
  SimTime now;
  double alpha = 0.0;
  double cwnd = 10.0;
  sim::Rng rng(5);
  for (int w = 0; w < 200; ++w) {
    const auto window = static_cast<std::size_t>(std::max(1.0, std::floor(cwnd)));
    const std::size_t marked = sim::uniform_index(rng, window + 1);
    round_trip(f, p, now, marked);
    const double frac = static_cast<double>(marked) / static_cast<double>(window);
    alpha = alpha * 15.0 / 16.0 + frac / 16.0;
    cwnd = frac > 0 ? std::max(1.0, cwnd * (1.0 - alpha / 2.0)) : cwnd + 1.0;
    ASSERT_NEAR(f.alpha, alpha, 1e-12) << "window " << w;
    ASSERT_NEAR(f.cwnd, cwnd, 1e-9) << "window " << w;
    ASSERT_GE(f.alpha, 0.0);
    ASSERT_LE(f.alpha, 1.0);
    ASSERT_GE(f.cwnd, 1.0);
  }
}

TEST(Dctcp, FullyMarkedWindowsDriveAlphaTowardOne) {
  TransportParams p;
  auto f = open_flow(spec(1'000'000'000), p);
  SimTime now;
  for (int n = 1; n <= 60; ++n) {
    round_trip(f, p, now, 1000);
    ASSERT_NEAR(f.alpha, 1.0 - std::pow(15.0 / 16.0, n), 1e-12);
  }
  EXPECT_EQ(f.cwnd, 1.0);
}

TEST(Dctcp, DuplicateAcksDoNotAdvance) {
  TransportParams p;
  auto f = open_flow(spec(100'000), p);
  const auto pkts = on_send_opportunity(f, SimTime{}, p);
  EXPECT_TRUE(on_ack(f, make_ack(pkts[0], 1460), SimTime::from_us(90), p).advanced);
  EXPECT_FALSE(on_ack(f, make_ack(pkts[0], 1460), SimTime::from_us(91), p).advanced);
  EXPECT_EQ(f.bytes_acked, 1460u);
}

TEST(Dctcp, TimeoutCollapsesWindowAndRewinds) {
  TransportParams p;
  auto f = open_flow(spec(100'000), p);
  on_send_opportunity(f, SimTime{}, p);
  on_timeout(f, SimTime::from_ms(5), p);
  EXPECT_EQ(f.timeout_count, 1u);
  EXPECT_EQ(f.cwnd, 1.0);
  EXPECT_EQ(f.snd_nxt, 0u);
  const auto resend = on_send_opportunity(f, SimTime::from_ms(5), p);
  ASSERT_EQ(resend.size(), 1u);
  EXPECT_EQ(resend[0].seq_no, 0u);
  EXPECT_TRUE(resend[0].retransmit);
}

TEST(Dctcp, BackoffDoublesUpToCap) {
  TransportParams p;
  auto f = open_flow(spec(100'000), p);
  on_send_opportunity(f, SimTime{}, p);
  std::vector<std::int64_t> seen;
  for (int i = 0; i < 8; ++i) {
    on_timeout(f, SimTime::from_ms(1000 * i), p);
    on_send_opportunity(f, SimTime::from_ms(1000 * i), p);
    seen.push_back(current_rto(f, p).ns() / 1'000'000);
  }
  EXPECT_EQ(seen, (std::vector<std::int64_t>{10, 20, 40, 80, 160, 200, 200, 200}));
}

TEST(Dctcp, RtoStaysWithinBoundsAfterSamples) {
  TransportParams p;
  auto f = open_flow(spec(10'000'000), p);
  SimTime now;
  for (int i = 0; i < 50; ++i) {
    round_trip(f, p, now, 0);
    ASSERT_GE(f.rto, p.rto_min);
    ASSERT_LE(f.rto, p.rto_max);
  }
}

TEST(Dctcp, CompletesWhenLastByteAcked) {
  TransportParams p;
  auto f = open_flow(spec(3000), p);
  const auto pkts = on_send_opportunity(f, SimTime{}, p);
  ASSERT_EQ(pkts.size(), 3u);
  EXPECT_FALSE(on_ack(f, make_ack(pkts[1], 2920), SimTime::from_us(50), p).completed);
  EXPECT_TRUE(on_ack(f, make_ack(pkts[2], 3000), SimTime::from_us(60), p).completed);
  EXPECT_EQ(f.completed_at, SimTime::from_us(60));
}

TEST(Dctcp, ParamsValidationNamesField) {
  TransportParams p;
  p.g = 0;
  try {
    p.validate();
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("transport.g"), std::string::npos);
  }
  p = {};
  p.rto_max = SimTime::from_ms(1);
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Receiver, CumulativeAckHandlesReordering) {
  FlowReceiver r(4000, 1460);
  auto seg = [](std::uint64_t seq) {
    Packet p;
    p.seq_no = seq;
    return p;
  };
  EXPECT_EQ(r.on_data(seg(1460)), 0u);
  EXPECT_EQ(r.on_data(seg(2920)), 0u);
  EXPECT_EQ(r.on_data(seg(0)), 4000u);
  EXPECT_TRUE(r.complete());
  EXPECT_EQ(r.on_data(seg(0)), 4000u);
}

TEST(Receiver, AckEchoesCe) {
  Packet d;
  d.flow_id = 9;
  d.src_host = 2;
  d.dst_host = 5;
  d.ecn_ce = true;
  const auto a = make_ack(d, 1460);
  EXPECT_TRUE(a.is_ack);
  EXPECT_TRUE(a.ecn_echo);
  EXPECT_EQ(a.src_host, 5u);
  EXPECT_EQ(a.dst_host, 2u);
  EXPECT_EQ(a.size, 40u);
  EXPECT_EQ(a.priority_tag, 1u);
}
