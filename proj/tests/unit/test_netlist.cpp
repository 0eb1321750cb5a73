#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qdi/cells.hpp"
#include "qdi/dual_rail.hpp"
#include "qdi/error.hpp"
#include "qdi/multiplier.hpp"

using namespace qdi;

namespace {

bool has(const std::vector<Diagnostic>& d, DiagnosticCode c) {
  return std::any_of(d.begin(), d.end(), [c](const Diagnostic& x) { return x.code == c; });
}

Netlist single_and(std::vector<NetId> inputs) {
  std::vector<DualRailPort> ports{{"x", PortDir::In, 0, 1}, {"z", PortDir::Out, 2, 3}};
  std::vector<Gate> gates{{0, GateKind::And2, std::move(inputs), 2, 0},
                          {1, GateKind::Or2, {0, 1}, 3, 0}};
  return Netlist(Protocol::Rtz, gates, ports, kNoNet, kNoNet, {});
}

}  // namespace

TEST(GateKind, ArityAndState) {
  const std::map<GateKind, std::size_t> want{{GateKind::And2, 2}, {GateKind::Or2, 2}, {GateKind::Or3, 3},
                                             {GateKind::Or4, 4},  {GateKind::Not, 1}, {GateKind::C2, 2},
                                             {GateKind::C3, 3},   {GateKind::And3, 3}, {GateKind::And4, 4},
                                             {GateKind::Buf, 1}};
  for (auto [k, a] : want) {
    EXPECT_EQ(arity(k), a) << to_string(k);
    EXPECT_EQ(is_stateful(k), k == GateKind::C2 || k == GateKind::C3);
    EXPECT_EQ(parse_gate_kind(to_string(k)), k);
    EXPECT_EQ(dual(dual(k)), k);
  }
  EXPECT_FALSE(parse_gate_kind("NAND2").has_value());
}

TEST(GateKind, EvaluateMatchesTruthTables) {
  for (GateKind k : kAllGateKinds) {
    const std::size_t n = arity(k);
    for (unsigned v = 0; v < (1U << n); ++v) {
      std::vector<Level> in;
      std::vector<int> ref;
      for (std::size_t i = 0; i < n; ++i) {
        in.push_back(static_cast<Level>((v >> i) & 1U));
        ref.push_back(static_cast<int>((v >> i) & 1U));
      }
      for (int held = 0; held < 2; ++held) {
        EXPECT_EQ(evaluate(k, in, static_cast<Level>(held)), oracle::gate_output(k, ref, held))
            << to_string(k) << " v=" << v << " held=" << held;
      }
    }
  }
}

TEST(GateKind, CElementHoldsOnDisagreement) {
  const Level mixed[] = {1, 0};
  EXPECT_EQ(evaluate(GateKind::C2, mixed, 0), 0);
  EXPECT_EQ(evaluate(GateKind::C2, mixed, 1), 1);
}

TEST(DualRail, EncodingTables) {
  EXPECT_EQ(encode(true, Protocol::Rtz), (RailPair{1, 0}));
  EXPECT_EQ(encode(false, Protocol::Rtz), (RailPair{0, 1}));
  EXPECT_EQ(encode(true, Protocol::Rto), (RailPair{0, 1}));
  EXPECT_EQ(encode(false, Protocol::Rto), (RailPair{1, 0}));
  EXPECT_EQ(decode({1, 1}, Protocol::Rtz), DualRailValue::Illegal);
  EXPECT_EQ(decode({0, 0}, Protocol::Rtz), DualRailValue::Spacer);
  EXPECT_EQ(decode({1, 1}, Protocol::Rto), DualRailValue::Spacer);
  EXPECT_EQ(decode({0, 0}, Protocol::Rto), DualRailValue::Illegal);
  for (auto p : {Protocol::Rtz, Protocol::Rto}) {
    EXPECT_EQ(decode(encode(true, p), p), DualRailValue::Data1);
    EXPECT_EQ(decode(encode(false, p), p), DualRailValue::Data0);
    EXPECT_EQ(decode(spacer(p), p), DualRailValue::Spacer);
  }
}

TEST(Validate, EmptyNetlistIsValid) { EXPECT_TRUE(validate(Netlist{}).empty()); }

TEST(Validate, UnconnectedInput) {
  const auto d = validate(single_and({0, kNoNet}));
  ASSERT_EQ(d.size(), 1U);
  EXPECT_EQ(d[0].code, DiagnosticCode::UnconnectedInput);
  EXPECT_EQ(d[0].gate, 0);
}

TEST(Validate, ArityMismatch) {
  EXPECT_TRUE(has(validate(single_and({0, 1, 1})), DiagnosticCode::ArityMismatch));
}

TEST(Validate, MultipleDrivers) {
  std::vector<DualRailPort> ports{{"x", PortDir::In, 0, 1}};
  std::vector<Gate> gates{{0, GateKind::Buf, {0}, 2, 0}, {1, GateKind::Buf, {1}, 2, 0}};
  EXPECT_TRUE(has(validate(Netlist(Protocol::Rtz, gates, ports, kNoNet, kNoNet, {})),
                  DiagnosticCode::MultipleDrivers));
}

TEST(Validate, DanglingOutputPort) {
  std::vector<DualRailPort> ports{{"x", PortDir::In, 0, 1}, {"z", PortDir::Out, 2, 3}};
  std::vector<Gate> gates{{0, GateKind::Buf, {0}, 2, 0}};
  EXPECT_TRUE(has(validate(Netlist(Protocol::Rtz, gates, ports, kNoNet, kNoNet, {})),
                  DiagnosticCode::DanglingOutput));
}

TEST(Validate, CombinationalLoopRejectedCElementLoopAccepted) {
  std::vector<DualRailPort> ports{{"x", PortDir::In, 0, 1}};
  std::vector<Gate> loop{{0, GateKind::Or2, {0, 3}, 2, 0}, {1, GateKind::Buf, {2}, 3, 0}};
  EXPECT_TRUE(has(validate(Netlist(Protocol::Rtz, loop, ports, kNoNet, kNoNet, {})),
                  DiagnosticCode::CombinationalLoop));
  std::vector<Gate> held{{0, GateKind::C2, {0, 3}, 2, 0}, {1, GateKind::Buf, {2}, 3, 0}};
  EXPECT_TRUE(validate(Netlist(Protocol::Rtz, held, ports, kNoNet, kNoNet, {})).empty());
}

TEST(Validate, RequireValidThrows) {
  try {
    require_valid(single_and({0, kNoNet}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidNetlist);
  }
}

TEST(Validate, GeneratedMultiplierIsClean) {
  for (auto p : {Protocol::Rtz, Protocol::Rto}) {
    MultiplierSpec s;
    s.protocol = p;
    EXPECT_TRUE(validate(generate(s)).empty());
  }
}

TEST(Netlist, IsochronicIffFanoutAtLeastTwo) {
  const auto nl = generate({});
  for (const auto& n : nl.nets()) EXPECT_EQ(n.isochronic, n.fanout.size() >= 2);
}

TEST(Dualize, Involution) {
  for (auto fa : {FullAdderKind::DimsStrong, FullAdderKind::WeakDisjoint}) {
    MultiplierSpec s;
    s.fa_kind = fa;
    const auto nl = generate(s);
    EXPECT_EQ(dualize(dualize(nl)), nl);
    EXPECT_EQ(dualize(nl).protocol(), Protocol::Rto);
  }
  EXPECT_EQ(dualize(dualize(Netlist{})), Netlist{});
}

TEST(Dualize, CompletionDetectorSwapsOrForAnd) {
  const auto rtz = make_completion_detector(4, Protocol::Rtz).netlist;
  const auto rto = dualize(rtz);
  auto cz = oracle::census(rtz);
  auto co = oracle::census(rto);
  EXPECT_EQ(cz[GateKind::Or2], 4U);
  EXPECT_EQ(co[GateKind::And2], 4U);
  EXPECT_EQ(co[GateKind::Or2], 0U);
  EXPECT_EQ(cz[GateKind::C2], co[GateKind::C2]);
}

TEST(Dualize, GateResetsComplementedAndCElementSelfDual) {
  const auto rtz = make_and2_strong(Protocol::Rtz).netlist;
  const auto rto = dualize(rtz);
  for (std::size_t i = 0; i < rtz.gates().size(); ++i) {
    EXPECT_EQ(rto.gates()[i].reset, 1 - rtz.gates()[i].reset);
    EXPECT_EQ(rto.gates()[i].kind, dual(rtz.gates()[i].kind));
  }
  // C(x, y) = NOT C(NOT x, NOT y) with the held state complemented too.
  for (unsigned v = 0; v < 4; ++v) {
    for (int held = 0; held < 2; ++held) {
      const std::vector<int> in{static_cast<int>(v & 1U), static_cast<int>(v >> 1)};
      const std::vector<int> inv{1 - in[0], 1 - in[1]};
      EXPECT_EQ(oracle::gate_output(GateKind::C2, in, held),
                1 - oracle::gate_output(GateKind::C2, inv, 1 - held));
    }
  }
}

TEST(Dualize, DeMorganDualOfTwoInputGates) {
  // A netlist holding one AND2; its dual computes OR2 on complemented-rail
  // logic: f*(x, y) = NOT f(NOT x, NOT y).
  for (auto kind : {GateKind::And2, GateKind::Or2}) {
    std::vector<DualRailPort> ports{{"x", PortDir::In, 0, 1}, {"y", PortDir::In, 2, 3},
                                    {"z", PortDir::Out, 4, 5}};
    std::vector<Gate> gates{{0, kind, {0, 2}, 4, 0}, {1, dual(kind), {1, 3}, 5, 0}};
    const Netlist nl(Protocol::Rtz, gates, ports, kNoNet, kNoNet, {});
    const Netlist d = dualize(nl);
    for (unsigned v = 0; v < 4; ++v) {
      const std::vector<int> in{static_cast<int>(v & 1U), static_cast<int>(v >> 1)};
      const std::vector<int> inv{1 - in[0], 1 - in[1]};
      EXPECT_EQ(oracle::gate_output(d.gate(0).kind, in, 0),
                1 - oracle::gate_output(nl.gate(0).kind, inv, 0));
    }
  }
}

TEST(Protocol, ParseAndFlip) {
  EXPECT_EQ(parse_protocol("rtz"), Protocol::Rtz);
  EXPECT_EQ(parse_protocol("rto"), Protocol::Rto);
  EXPECT_FALSE(parse_protocol("RTZ").has_value());
  EXPECT_EQ(flip(Protocol::Rtz), Protocol::Rto);
  EXPECT_EQ(spacer_level(Protocol::Rtz), 0);
  EXPECT_EQ(spacer_level(Protocol::Rto), 1);
}
