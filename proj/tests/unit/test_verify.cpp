#include <gtest/gtest.h>

#include "qdi/cells.hpp"
#include "qdi/controls.hpp"
#include "qdi/error.hpp"
#include "qdi/multiplier.hpp"
#include "qdi/verify.hpp"

using namespace qdi;

namespace {

Netlist mult(int n, FullAdderKind k = FullAdderKind::DimsStrong, Protocol p = Protocol::Rtz) {
  MultiplierSpec s;
  s.n = n;
  s.fa_kind = k;
  s.protocol = p;
  return generate(s);
}

// x and y feed OR2 -> z.rail1; z.rail0 is a BUF of x.rail0.
Netlist or_netlist() {
  std::vector<DualRailPort> ports{{"x", PortDir::In, 0, 1}, {"y", PortDir::In, 2, 3},
                                  {"z", PortDir::Out, 4, 5}};
  std::vector<Gate> gates{{0, GateKind::Or2, {0, 2}, 4, 0}, {1, GateKind::And2, {1, 3}, 5, 0}};
  return Netlist(Protocol::Rtz, gates, ports, kNoNet, kNoNet, {});
}

std::vector<Operands> pairs(std::initializer_list<Operands> l) { return {l}; }

}  // namespace

TEST(Coverage, ExhaustiveIsAMajor) {
  const auto ops = Coverage::all().operands(2);
  ASSERT_EQ(ops.size(), 16u);
  EXPECT_EQ(ops[1], (Operands{0, 1}));
  EXPECT_EQ(ops[4], (Operands{1, 0}));
  EXPECT_EQ(ops.back(), (Operands{3, 3}));
  EXPECT_THROW(Coverage::all().operands(13), Error);
  EXPECT_THROW(Coverage::all().operands(0), Error);
}

TEST(Coverage, RandomIsSeededAndMasked) {
  const auto a = Coverage::random(500, 4).operands(5);
  const auto b = Coverage::random(500, 4).operands(5);
  const auto c = Coverage::random(500, 5).operands(5);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  ASSERT_EQ(a.size(), 500u);
  for (auto o : a) {
    EXPECT_LT(o.a, 32u);
    EXPECT_LT(o.b, 32u);
  }
  EXPECT_EQ(Coverage::random(10, 1).operands(32).size(), 10u);
}

TEST(OperandWidth, FromPorts) {
  EXPECT_EQ(operand_width(mult(3)), 3);
  EXPECT_THROW(operand_width(make_and2_strong(Protocol::Rtz).netlist), Error);
}

TEST(Functional, GeneratedMultipliersPass) {
  for (auto k : {FullAdderKind::DimsStrong, FullAdderKind::WeakDisjoint}) {
    for (auto p : {Protocol::Rtz, Protocol::Rto}) {
      const auto nl = mult(4, k, p);
      const auto r = check_functional(nl, multiply_oracle, Coverage::all());
      EXPECT_TRUE(r.passed) << r.summary;
      EXPECT_EQ(r.cases, 256u);
      EXPECT_FALSE(r.counterexample.has_value());
    }
  }
}

TEST(Functional, WrongOracleIsReported) {
  const auto nl = mult(2);
  const auto r = check_functional(nl, [](std::uint64_t a, std::uint64_t b) { return a + b; },
                                  Coverage::all());
  EXPECT_FALSE(r.passed);
  // first pair where a*b != a+b in a-major order is (0, 1)
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ(r.counterexample->stimulus["failing"]["a"], 0);
  EXPECT_EQ(r.counterexample->stimulus["failing"]["b"], 1);
}

TEST(Functional, SwappedAdderFailsWithReplayableCounterexample) {
  const auto nl = swap_adder_outputs(mult(4), "fa_r1_c0");
  EXPECT_NE(nl.meta().name, mult(4).meta().name);
  const auto r = check_functional(nl, multiply_oracle, Coverage::all());
  ASSERT_FALSE(r.passed);
  ASSERT_TRUE(r.counterexample.has_value());
  const auto& cx = *r.counterexample;
  EXPECT_EQ(cx.delay_model["mode"], "unit");
  EXPECT_FALSE(cx.trace.empty());

  std::vector<Operands> ops;
  for (const auto& o : cx.stimulus["operands"]) ops.push_back({o[0].get<std::uint64_t>(), o[1].get<std::uint64_t>()});
  ASSERT_FALSE(ops.empty());
  Harness h(nl, DelayModel::unit());
  CycleCapture cap;
  CycleReport last;
  for (const auto& o : ops) last = h.run_cycle(o, &cap);
  EXPECT_NE(last.product, ops.back().a * ops.back().b);
  EXPECT_EQ(cap.events, cx.trace);
}

TEST(Functional, UnknownInstanceRejected) {
  EXPECT_THROW(swap_adder_outputs(mult(2), "fa_r9_c9"), Error);
  EXPECT_THROW(swap_adder_outputs(mult(2), "pp_0_0"), Error);
}

TEST(Workload, ReportsPerCycle) {
  const auto nl = mult(3, FullAdderKind::WeakDisjoint);
  const auto ops = pairs({{7, 7}, {1, 6}, {0, 0}});
  const auto w = run_workload(nl, ops, DelayModel::random(4));
  EXPECT_TRUE(w.passed());
  EXPECT_EQ(w.reports.size(), 3u);
  EXPECT_EQ(w.reports[0].product, 49u);
  EXPECT_EQ(w.protocol.cases, 3u);
}

TEST(StrongIndication, StrongCellsPass) {
  for (auto p : {Protocol::Rtz, Protocol::Rto}) {
    const auto a = check_strong_indication(make_and2_strong(p).netlist);
    EXPECT_TRUE(a.passed) << a.summary;
    // 4 codewords x 2 orders
    EXPECT_EQ(a.cases, 8u);
    const auto d = check_strong_indication(make_full_adder(FullAdderKind::DimsStrong, p).netlist);
    EXPECT_TRUE(d.passed) << d.summary;
    EXPECT_EQ(d.cases, 8u * 6u);
  }
}

TEST(StrongIndication, WeakAdderIsNotStrong) {
  const auto r = check_strong_indication(make_full_adder(FullAdderKind::WeakDisjoint, Protocol::Rtz).netlist);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_FALSE(r.counterexample->detail.empty());
}

TEST(StrongIndication, TooManyInputsRejected) {
  EXPECT_THROW(check_strong_indication(mult(2)), Error);
}

TEST(WeakIndication, CellsAndMultipliersPass) {
  for (auto p : {Protocol::Rtz, Protocol::Rto}) {
    EXPECT_TRUE(check_weak_indication(make_full_adder(FullAdderKind::WeakDisjoint, p).netlist).passed);
    EXPECT_TRUE(check_weak_indication(make_and2_strong(p).netlist).passed);
  }
  WeakIndicationOptions o;
  o.sampled_orders = 50;
  for (auto k : {FullAdderKind::DimsStrong, FullAdderKind::WeakDisjoint}) {
    const auto r = check_weak_indication(mult(4, k), o);
    EXPECT_TRUE(r.passed) << r.summary;
    EXPECT_EQ(r.cases, 50u);
  }
}

TEST(WeakIndication, StrongImpliesWeak) {
  std::vector<Netlist> cells;
  for (auto p : {Protocol::Rtz, Protocol::Rto}) {
    cells.push_back(make_and2_strong(p).netlist);
    cells.push_back(make_full_adder(FullAdderKind::DimsStrong, p).netlist);
    cells.push_back(make_full_adder(FullAdderKind::WeakDisjoint, p).netlist);
    cells.push_back(make_majority_adder(p).netlist);
    cells.push_back(early_output_stub(p));
  }
  for (const auto& c : cells) {
    if (check_strong_indication(c).passed) EXPECT_TRUE(check_weak_indication(c).passed) << c.meta().name;
  }
}

TEST(WeakIndication, EarlyOutputStubFails) {
  for (auto p : {Protocol::Rtz, Protocol::Rto}) {
    const auto r = check_weak_indication(early_output_stub(p));
    EXPECT_FALSE(r.passed);
    ASSERT_TRUE(r.counterexample.has_value());
    EXPECT_FALSE(r.counterexample->trace.empty());
  }
}

TEST(WeakIndication, SamplingIsSeeded) {
  const auto nl = mult(2);
  WeakIndicationOptions o;
  o.sampled_orders = 20;
  o.seed = 3;
  const auto a = check_weak_indication(nl, o);
  const auto b = check_weak_indication(nl, o);
  EXPECT_EQ(a.cases, b.cases);
  EXPECT_EQ(a.summary, b.summary);
}

TEST(Monotonicity, EmptyTracePasses) {
  const auto r = check_monotonicity(or_netlist(), {}, {});
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.cases, 0u);
}

TEST(Monotonicity, DoubleToggleWithinHalfFails) {
  const auto nl = or_netlist();
  const Trace t{{0, 0, 1, kEnvironment}, {1, 4, 1, 0}, {5, 0, 0, kEnvironment}};
  EXPECT_FALSE(check_monotonicity(nl, t, {}).passed);
  const std::size_t b[] = {0, 2};
  EXPECT_TRUE(check_monotonicity(nl, t, b).passed);
}

TEST(Monotonicity, CombinerSeeingTwoInputsFails) {
  const auto nl = or_netlist();
  const Trace t{{0, 0, 1, kEnvironment}, {0, 2, 1, kEnvironment}, {1, 4, 1, 0}};
  const auto r = check_monotonicity(nl, t, {});
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ(r.counterexample->trace.size(), 2u);
  const Trace ok{{0, 0, 1, kEnvironment}, {1, 4, 1, 0}, {0 + 2, 3, 1, kEnvironment}};
  EXPECT_TRUE(check_monotonicity(nl, ok, {}).passed);
}

TEST(Monotonicity, UnknownNetRejected) {
  const Trace t{{0, 42, 1, kEnvironment}};
  EXPECT_THROW(check_monotonicity(or_netlist(), t, {}), Error);
}

TEST(Monotonicity, IndicatingCellsPassMajorityFails) {
  for (auto p : {Protocol::Rtz, Protocol::Rto}) {
    EXPECT_TRUE(check_cell_monotonicity(make_and2_strong(p).netlist).passed);
    EXPECT_TRUE(check_cell_monotonicity(make_full_adder(FullAdderKind::DimsStrong, p).netlist).passed);
    EXPECT_TRUE(check_cell_monotonicity(make_full_adder(FullAdderKind::WeakDisjoint, p).netlist).passed);
    const auto m = check_cell_monotonicity(make_majority_adder(p).netlist);
    EXPECT_FALSE(m.passed);
    ASSERT_TRUE(m.counterexample.has_value());
    EXPECT_NE(m.counterexample->detail.find("saw inputs"), std::string::npos);
  }
}

TEST(DelayInsensitivity, GeneratedMultipliersPass) {
  const auto ops = Coverage::random(24, 2).operands(4);
  for (auto k : {FullAdderKind::DimsStrong, FullAdderKind::WeakDisjoint}) {
    for (auto p : {Protocol::Rtz, Protocol::Rto}) {
      const auto r = check_delay_insensitivity(mult(4, k, p), 12, ops);
      EXPECT_TRUE(r.passed) << r.summary;
      EXPECT_EQ(r.cases, 12u * 24u);
    }
  }
}

TEST(DelayInsensitivity, WorkerCountDoesNotChangeResult) {
  const auto nl = swap_adder_outputs(mult(3), "fa_r1_c1");
  const auto ops = Coverage::all().operands(3);
  DelayInsensitivityOptions one;
  one.workers = 1;
  DelayInsensitivityOptions many;
  many.workers = 4;
  const auto a = check_delay_insensitivity(nl, 6, ops, one);
  const auto b = check_delay_insensitivity(nl, 6, ops, many);
  EXPECT_EQ(a.passed, b.passed);
  EXPECT_EQ(a.summary, b.summary);
}

TEST(DelayInsensitivity, SlowForkBranchFails) {
  const auto nl = mult(4);
  const auto site = multiplier_fork_site(nl);
  const auto inj = inject_fork_buffer(nl, site.consumer, site.slot);
  EXPECT_EQ(inj.netlist.gates().size(), nl.gates().size() + 1);
  EXPECT_EQ(inj.netlist.gate(inj.buffer).kind, GateKind::Buf);

  // The buffer alone is harmless when fast.
  const auto ops = Coverage::all().operands(4);
  EXPECT_TRUE(check_functional(inj.netlist, multiply_oracle, Coverage::all()).passed);

  DelayInsensitivityOptions o;
  o.overrides[inj.buffer] = 200;
  const auto r = check_delay_insensitivity(inj.netlist, 4, ops, o);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ(r.counterexample->seed, o.base_seed);
}

TEST(DelayInsensitivity, BadForkSiteRejected) {
  const auto nl = mult(2);
  EXPECT_THROW(inject_fork_buffer(nl, static_cast<GateId>(nl.gates().size()), 0), Error);
  EXPECT_THROW(inject_fork_buffer(nl, 0, 7), Error);
  EXPECT_THROW(multiplier_fork_site(make_and2_strong(Protocol::Rtz).netlist), Error);
}

TEST(Duality, CellsAndMultiplier) {
  const auto a = check_rtz_rto_duality(make_and2_strong(Protocol::Rtz).netlist);
  EXPECT_TRUE(a.passed) << a.summary;
  EXPECT_EQ(a.cases, 4u);
  const auto f = check_rtz_rto_duality(make_full_adder(FullAdderKind::WeakDisjoint, Protocol::Rtz).netlist);
  EXPECT_TRUE(f.passed);
  const auto m = check_rtz_rto_duality(mult(4, FullAdderKind::WeakDisjoint));
  EXPECT_TRUE(m.passed) << m.summary;
  EXPECT_EQ(m.cases, 256u);
}

TEST(Duality, RequiresRtzInput) {
  EXPECT_THROW(check_rtz_rto_duality(mult(2, FullAdderKind::DimsStrong, Protocol::Rto)), Error);
}

TEST(Outcome, JsonShape) {
  const auto r = check_weak_indication(early_output_stub(Protocol::Rtz));
  const auto j = to_json(r);
  EXPECT_EQ(j["name"], "weak_indication");
  EXPECT_EQ(j["passed"], false);
  EXPECT_TRUE(j.contains("counterexample"));
  EXPECT_TRUE(j["counterexample"].contains("trace"));
  EXPECT_FALSE(to_json(r, false)["counterexample"].contains("trace"));
  EXPECT_TRUE(to_json(check_monotonicity(or_netlist(), {}, {}))["counterexample"].is_null());
}

TEST(Replay, DelayModelJsonRoundTrip) {
  auto r = DelayModel::random(11, 2, 30);
  r.override_gate(5, 200);
  const auto back = DelayModel::from_json(r.to_json());
  EXPECT_EQ(back.to_json(), r.to_json());
  const auto t = DelayModel::table({{GateKind::C2, 3}}, true);
  EXPECT_EQ(DelayModel::from_json(t.to_json()).to_json(), t.to_json());
  EXPECT_EQ(DelayModel::from_json(DelayModel::unit().to_json()).mode(), DelayMode::Unit);
  EXPECT_THROW(DelayModel::from_json(nlohmann::ordered_json{{"mode", "gauss"}}), Error);
  EXPECT_THROW(DelayModel::from_json(nlohmann::ordered_json::object()), Error);
}

TEST(Replay, EveryControlReplays) {
  const auto mutant = swap_adder_outputs(mult(4), "fa_r2_c1");
  const auto f = check_functional(mutant, multiply_oracle, Coverage::all());
  ASSERT_FALSE(f.passed);
  EXPECT_EQ(replay_counterexample(mutant, f), f.counterexample->trace);

  const auto stub = early_output_stub(Protocol::Rto);
  const auto w = check_weak_indication(stub);
  ASSERT_FALSE(w.passed);
  EXPECT_EQ(replay_counterexample(stub, w), w.counterexample->trace);

  const auto weak_fa = make_full_adder(FullAdderKind::WeakDisjoint, Protocol::Rtz).netlist;
  const auto s = check_strong_indication(weak_fa);
  ASSERT_FALSE(s.passed);
  EXPECT_EQ(replay_counterexample(weak_fa, s), s.counterexample->trace);

  const auto maj = make_majority_adder(Protocol::Rtz).netlist;
  const auto m = check_cell_monotonicity(maj);
  ASSERT_FALSE(m.passed);
  EXPECT_EQ(replay_counterexample(maj, m), m.counterexample->trace);

  const auto base = mult(4);
  const auto site = multiplier_fork_site(base);
  const auto inj = inject_fork_buffer(base, site.consumer, site.slot);
  DelayInsensitivityOptions o;
  o.overrides[inj.buffer] = 200;
  const auto d = check_delay_insensitivity(inj.netlist, 3, Coverage::all().operands(4), o);
  ASSERT_FALSE(d.passed);
  EXPECT_FALSE(d.counterexample->trace.empty());
  EXPECT_EQ(replay_counterexample(inj.netlist, d), d.counterexample->trace);
}

TEST(Replay, Errors) {
  const auto ok = check_functional(mult(2), multiply_oracle, Coverage::all());
  EXPECT_THROW(replay_counterexample(mult(2), ok), Error);
  CheckOutcome bogus;
  bogus.name = "rtz_rto_duality";
  bogus.passed = false;
  bogus.counterexample = Counterexample{};
  bogus.counterexample->delay_model = DelayModel::unit().to_json();
  EXPECT_THROW(replay_counterexample(mult(2), bogus), Error);
}
