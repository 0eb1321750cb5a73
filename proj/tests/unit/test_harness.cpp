#include <gtest/gtest.h>

#include <sstream>

#include "qdi/cells.hpp"
#include "qdi/error.hpp"
#include "qdi/harness.hpp"
#include "qdi/multiplier.hpp"

using namespace qdi;

namespace {

Netlist mult(int n, FullAdderKind k = FullAdderKind::DimsStrong, Protocol p = Protocol::Rtz) {
  MultiplierSpec s;
  s.n = n;
  s.fa_kind = k;
  s.protocol = p;
  return generate(s);
}

const FullAdderKind kAdders[] = {FullAdderKind::DimsStrong, FullAdderKind::WeakDisjoint};
const Protocol kBoth[] = {Protocol::Rtz, Protocol::Rto};

}  // namespace

TEST(Harness, SingleProducts) {
  const auto nl = mult(4);
  Harness h(nl, DelayModel::unit());
  EXPECT_EQ(h.run_cycle({13, 11}).product, 143u);
  EXPECT_EQ(h.run_cycle({0, 15}).product, 0u);
  EXPECT_EQ(h.run_cycle({15, 0}).product, 0u);
  EXPECT_EQ(h.run_cycle({15, 15}).product, 225u);
}

TEST(Harness, Sequence) {
  const auto nl = mult(4, FullAdderKind::WeakDisjoint, Protocol::Rto);
  Harness h(nl, DelayModel::random(2));
  const Operands ops[] = {{1, 1}, {2, 3}, {15, 15}};
  const auto r = h.run_sequence(ops);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].product, 1u);
  EXPECT_EQ(r[1].product, 6u);
  EXPECT_EQ(r[2].product, 225u);
  EXPECT_EQ(r[1].a, 2u);
  EXPECT_EQ(r[1].b, 3u);
  EXPECT_TRUE(h.run_sequence({}).empty());
}

TEST(Harness, ExhaustiveFourBitAllVariants) {
  for (auto k : kAdders) {
    for (auto p : kBoth) {
      const auto nl = mult(4, k, p);
      for (bool eager : {false, true}) {
        HarnessOptions o;
        o.eager_environment = eager;
        Harness h(nl, DelayModel::unit(), o);
        for (std::uint64_t a = 0; a < 16; ++a) {
          for (std::uint64_t b = 0; b < 16; ++b) {
            const auto r = h.run_cycle({a, b});
            ASSERT_EQ(r.product, a * b);
            EXPECT_EQ(r.protocol_violations, 0u);
            EXPECT_EQ(r.late_output_events, 0u);
            EXPECT_TRUE(r.returned_to_rest);
          }
        }
        h.drain();
        for (std::size_t i = 0; i < nl.net_count(); ++i) {
          ASSERT_EQ(h.sim().level(static_cast<NetId>(i)), nl.rest_level(static_cast<NetId>(i)));
        }
      }
    }
  }
}

TEST(Harness, UpperOperandBitsIgnored) {
  const auto nl = mult(2);
  Harness h(nl, DelayModel::unit());
  EXPECT_EQ(h.run_cycle({7, 6}).product, 3u * 2u);
  EXPECT_EQ(h.operand_bits({1, 2}), (std::vector<bool>{true, false, false, true}));
}

TEST(Harness, PhaseStateOrder) {
  PhaseState s;
  EXPECT_EQ(s.current(), Phase::Step1Idle);
  EXPECT_THROW(s.advance(Phase::Step3SpacerApplied), Error);
  s.advance(Phase::Step2DataAcknowledged);
  EXPECT_THROW(s.advance(Phase::Step2DataAcknowledged), Error);
  s.advance(Phase::Step3SpacerApplied);
  s.advance(Phase::Step4Released);
  EXPECT_THROW(s.advance(Phase::Step2DataAcknowledged), Error);
  s.advance(Phase::Step1Idle);
  EXPECT_EQ(s.current(), Phase::Step1Idle);
}

TEST(Harness, ReturnsToStepOneAfterCycle) {
  const auto nl = mult(2);
  Harness h(nl, DelayModel::unit());
  h.run_cycle({1, 1});
  EXPECT_EQ(h.phase(), Phase::Step1Idle);
}

TEST(Harness, ForwardEqualsReverseUnderUnitDelays) {
  for (auto k : kAdders) {
    for (auto p : kBoth) {
      for (int n : {2, 4}) {
        const auto nl = mult(n, k, p);
        Harness h(nl, DelayModel::unit());
        const std::uint64_t top = 1ULL << n;
        std::vector<CycleReport> all;
        for (std::uint64_t a = 0; a < top; ++a) {
          for (std::uint64_t b = 0; b < top; ++b) all.push_back(h.run_cycle({a, b}));
        }
        for (const auto& r : all) {
          EXPECT_EQ(r.forward_latency, r.reverse_latency) << r.a << "*" << r.b;
          EXPECT_EQ(r.cycle_time, r.forward_latency + r.reverse_latency);
          EXPECT_GT(r.transitions, 0u);
        }
        EXPECT_TRUE(measure_latencies(all).forward_equals_reverse);
      }
    }
  }
}

TEST(Harness, CycleIsSumUnderRandomDelays) {
  const auto nl = mult(4, FullAdderKind::WeakDisjoint);
  Harness h(nl, DelayModel::random(9));
  for (std::uint64_t a = 0; a < 16; a += 3) {
    const auto r = h.run_cycle({a, 15 - a});
    EXPECT_EQ(r.cycle_time, r.forward_latency + r.reverse_latency);
  }
}

TEST(Harness, LargerArrayIsSlower) {
  for (auto k : kAdders) {
    const Operands ops[] = {{3, 5}, {255, 255}, {0, 0}, {170, 85}, {1, 128}};
    const auto n8 = mult(8, k);
    const auto n4 = mult(4, k);
    Harness h8(n8, DelayModel::unit());
    Harness h4(n4, DelayModel::unit());
    std::vector<Operands> ops4;
    for (auto o : ops) ops4.push_back({o.a & 15, o.b & 15});
    const auto s8 = measure_latencies(h8.run_sequence(ops));
    const auto s4 = measure_latencies(h4.run_sequence(ops4));
    EXPECT_GT(s8.mean_cycle, s4.mean_cycle);
  }
}

TEST(Harness, SummaryStatistics) {
  std::vector<CycleReport> r(3);
  r[0].forward_latency = 4, r[0].reverse_latency = 4, r[0].cycle_time = 8;
  r[1].forward_latency = 6, r[1].reverse_latency = 5, r[1].cycle_time = 11;
  r[2].forward_latency = 5, r[2].reverse_latency = 6, r[2].cycle_time = 11;
  const auto s = measure_latencies(r);
  EXPECT_EQ(s.cycles, 3u);
  EXPECT_EQ(s.min_forward, 4u);
  EXPECT_EQ(s.max_forward, 6u);
  EXPECT_EQ(s.min_cycle, 8u);
  EXPECT_EQ(s.max_cycle, 11u);
  EXPECT_DOUBLE_EQ(s.mean_forward, 5.0);
  EXPECT_DOUBLE_EQ(s.mean_cycle, 10.0);
  EXPECT_FALSE(s.forward_equals_reverse);
}

TEST(Harness, EmptyReportsRejected) {
  try {
    measure_latencies({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Empty);
  }
}

TEST(Harness, NeedsCompletionDetector) {
  const auto cell = make_and2_strong(Protocol::Rtz).netlist;
  try {
    Harness h(cell, DelayModel::unit());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(Harness, OperandBitsNeedOperandPorts) {
  const auto cd = make_completion_detector(2, Protocol::Rtz).netlist;
  Harness h(cd, DelayModel::unit());
  EXPECT_THROW(h.operand_bits({1, 1}), Error);
  const auto r = h.run_bits({true, false});
  EXPECT_GT(r.forward_latency, 0u);
  EXPECT_THROW(h.run_bits({true}), Error);
}

TEST(Harness, CaptureMarksHalves) {
  const auto nl = mult(2);
  Harness h(nl, DelayModel::unit());
  CycleCapture cap;
  const auto r = h.run_cycle({3, 3}, &cap);
  EXPECT_EQ(cap.spacer_start - cap.data_start, r.forward_latency);
  EXPECT_EQ(cap.end - cap.spacer_start, r.reverse_latency);
  ASSERT_LT(cap.spacer_index, cap.events.size());
  EXPECT_GE(cap.events[cap.spacer_index].time, cap.spacer_start);
  EXPECT_EQ(cap.events.size(), r.transitions);
}

TEST(Harness, CsvAndJsonExport) {
  const auto nl = mult(2);
  Harness h(nl, DelayModel::unit());
  const Operands ops[] = {{2, 3}};
  const auto r = h.run_sequence(ops);
  std::ostringstream os;
  write_cycles_csv(os, r);
  const auto text = os.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "a,b,product,forward,reverse,cycle,transitions");
  EXPECT_EQ(text.find("2,3,6,"), text.find('\n') + 1);
  const auto j = cycles_to_json(r);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["product"], 6);
  EXPECT_EQ(j[0]["cycle"], r[0].cycle_time);
}
