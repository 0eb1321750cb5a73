#include "qdi/harness.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "qdi/error.hpp"

namespace qdi {

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::Step1Idle: return "step1_idle";
    case Phase::Step2DataAcknowledged: return "step2_data_acknowledged";
    case Phase::Step3SpacerApplied: return "step3_spacer_applied";
    case Phase::Step4Released: return "step4_released";
  }
  return "?";
}

void PhaseState::advance(Phase next) {
  const auto expected = static_cast<Phase>((static_cast<int>(phase_) + 1) % 4);
  if (next != expected) {
    throw Error(ErrorCode::InvalidArgument, "handshake step " + std::string(to_string(next)) +
                                                " cannot follow " + std::string(to_string(phase_)));
  }
  phase_ = next;
}

Harness::Harness(const Netlist& netlist, DelayModel delays, HarnessOptions opts)
    : sim_(netlist, std::move(delays)), opts_(opts), ports_(netlist.ports()) {
  if (netlist.ack_out() == kNoNet) {
    throw Error(ErrorCode::InvalidArgument, "harness needs a completion detector (ack_out)");
  }
  if (netlist.ack_in() != kNoNet) sim_.link_inverter(netlist.ack_out(), netlist.ack_in());
  sim_.set_tracing(true);
  rail_port_.assign(netlist.net_count(), -1);
  for (std::size_t i = 0; i < ports_.size(); ++i) {
    rail_port_[static_cast<std::size_t>(ports_[i].rail1)] = static_cast<int>(i);
    rail_port_[static_cast<std::size_t>(ports_[i].rail0)] = static_cast<int>(i);
  }
}

std::vector<bool> Harness::operand_bits(Operands ops) const {
  std::vector<bool> bits;
  for (const auto& p : netlist().input_ports()) {
    const char tag = p.name.empty() ? '\0' : p.name[0];
    const std::string idx = p.name.substr(1);
    if ((tag != 'a' && tag != 'b') || idx.empty() ||
        !std::all_of(idx.begin(), idx.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw Error(ErrorCode::InvalidArgument, "input port '" + p.name + "' is not an operand bit");
    }
    const auto pos = std::stoul(idx);
    const std::uint64_t v = tag == 'a' ? ops.a : ops.b;
    bits.push_back(pos < 64 && ((v >> pos) & 1U));
  }
  return bits;
}

CycleReport Harness::run_cycle(Operands ops, CycleCapture* capture) {
  CycleReport r = run_bits(operand_bits(ops), capture);
  r.a = ops.a;
  r.b = ops.b;
  return r;
}

Harness::HalfResult Harness::run_half(bool data_half, const std::vector<bool>& bits) {
  const Netlist& nl = netlist();
  const Protocol proto = nl.protocol();
  const Level rest = spacer_level(proto);
  const Level ack_target = data_half ? (rest ? 0 : 1) : rest;

  const std::size_t trace_from = sim_.trace().size();
  std::vector<DualRailValue> before(ports_.size());
  for (std::size_t i = 0; i < ports_.size(); ++i) before[i] = sim_.read_port(ports_[i]);

  const Time t0 = sim_.clock();
  const auto& inputs = nl.input_ports();
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const RailPair want = data_half ? encode(bits[k], proto) : spacer(proto);
    sim_.set_primary(inputs[k].rail1, want.rail1, t0);
    sim_.set_primary(inputs[k].rail0, want.rail0, t0);
  }
  if (nl.meta().phase != kNoNet) {
    sim_.set_primary(nl.meta().phase, data_half ? (rest ? 0 : 1) : rest, t0);
  }

  const char* half = data_half ? "data" : "spacer";
  if (opts_.eager_environment) {
    if (!sim_.run_until_level(nl.ack_out(), ack_target, opts_.guard)) {
      throw Error(ErrorCode::StuckPhase, std::string("completion never reached for ") + half);
    }
  } else {
    sim_.run_until_quiescent(opts_.guard);
    if (sim_.level(nl.ack_out()) != ack_target) {
      throw Error(ErrorCode::StuckPhase, std::string("completion detector idle after ") + half);
    }
  }
  const Time t_ack = sim_.last_change(nl.ack_out());

  HalfResult res;
  res.latency = t_ack - t0;

  // Protocol monitor over this half's events.
  std::vector<RailPair> rails(ports_.size());
  for (std::size_t i = 0; i < ports_.size(); ++i) {
    const Level s = spacer_level(proto);
    const auto v = before[i];
    rails[i] = v == DualRailValue::Spacer ? RailPair{s, s}
                                          : encode(v == DualRailValue::Data1, proto);
  }
  std::vector<int> changes(ports_.size(), 0);
  std::vector<DualRailValue> cur = before;
  const auto& tr = sim_.trace();
  for (std::size_t e = trace_from; e < tr.size(); ++e) {
    const int pi = rail_port_[static_cast<std::size_t>(tr[e].net)];
    if (pi < 0) continue;
    const auto i = static_cast<std::size_t>(pi);
    (tr[e].net == ports_[i].rail1 ? rails[i].rail1 : rails[i].rail0) = tr[e].level;
    const DualRailValue v = decode(rails[i], proto);
    if (v == DualRailValue::Illegal) {
      throw Error(ErrorCode::IllegalOutput, "port " + ports_[i].name + " read ILLEGAL at t=" +
                                                std::to_string(tr[e].time) + " during " + half);
    }
    if (v != cur[i]) {
      ++changes[i];
      cur[i] = v;
    }
    if (ports_[i].dir == PortDir::Out && tr[e].time > t_ack) ++res.late;
  }
  for (std::size_t i = 0; i < ports_.size(); ++i) {
    const bool ok = data_half ? is_data(cur[i]) : cur[i] == DualRailValue::Spacer;
    if (!ok) {
      throw Error(ErrorCode::StuckPhase, "port " + ports_[i].name + " is " +
                                             std::string(to_string(cur[i])) + " after " + half);
    }
    if (changes[i] != 1) ++res.violations;
  }
  return res;
}

CycleReport Harness::run_bits(const std::vector<bool>& bits, CycleCapture* capture) {
  const Netlist& nl = netlist();
  if (bits.size() != nl.input_ports().size()) {
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(nl.input_ports().size()) +
                                                " input bits, got " + std::to_string(bits.size()));
  }
  if (phase_.current() != Phase::Step1Idle) {
    throw Error(ErrorCode::InvalidArgument, "cycle started outside step 1");
  }
  const std::size_t trace_from = sim_.trace().size();
  const std::uint64_t applied_from = sim_.applied_events();

  CycleReport r;
  for (std::size_t i = 0; i < bits.size() && i < 64; ++i) {
    if (bits[i]) r.a |= std::uint64_t{1} << i;
  }

  const Time data_start = sim_.clock();
  const auto fwd = run_half(true, bits);
  phase_.advance(Phase::Step2DataAcknowledged);
  const auto& outs = nl.output_ports();
  for (std::size_t k = 0; k < outs.size() && k < 64; ++k) {
    if (sim_.read_port(outs[k]) == DualRailValue::Data1) r.product |= std::uint64_t{1} << k;
  }

  const Time spacer_start = sim_.clock();
  const std::size_t spacer_index = sim_.trace().size() - trace_from;
  phase_.advance(Phase::Step3SpacerApplied);
  const auto rev = run_half(false, bits);
  phase_.advance(Phase::Step4Released);
  phase_.advance(Phase::Step1Idle);

  r.forward_latency = fwd.latency;
  r.reverse_latency = rev.latency;
  r.cycle_time = r.forward_latency + r.reverse_latency;
  r.transitions = sim_.applied_events() - applied_from;
  r.protocol_violations = std::max(fwd.violations, rev.violations);
  r.late_output_events = fwd.late + rev.late;
  if (!opts_.eager_environment) {
    for (std::size_t i = 0; i < nl.net_count(); ++i) {
      if (sim_.level(static_cast<NetId>(i)) != nl.rest_level(static_cast<NetId>(i))) {
        r.returned_to_rest = false;
        break;
      }
    }
  }

  if (capture) {
    capture->events.assign(sim_.trace().begin() + static_cast<std::ptrdiff_t>(trace_from),
                           sim_.trace().end());
    capture->data_start = data_start;
    capture->spacer_start = spacer_start;
    capture->end = sim_.clock();
    capture->spacer_index = spacer_index;
  }
  if (!opts_.retain_trace) sim_.clear_trace();
  return r;
}

std::vector<CycleReport> Harness::run_sequence(std::span<const Operands> ops, const CycleHook& hook) {
  std::vector<CycleReport> out;
  out.reserve(ops.size());
  CycleCapture cap;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    try {
      out.push_back(run_cycle(ops[i], hook ? &cap : nullptr));
    } catch (const Error& e) {
      throw Error(e.code(), "cycle " + std::to_string(i) + " (a=" + std::to_string(ops[i].a) +
                                ", b=" + std::to_string(ops[i].b) + "): " + e.what());
    }
    if (hook) hook(i, out.back(), cap);
  }
  return out;
}

LatencySummary measure_latencies(std::span<const CycleReport> reports) {
  if (reports.empty()) throw Error(ErrorCode::Empty, "no cycle reports");
  LatencySummary s;
  s.cycles = reports.size();
  s.min_forward = s.min_reverse = s.min_cycle = std::numeric_limits<Time>::max();
  double sf = 0, sr = 0, sc = 0;
  for (const auto& r : reports) {
    s.min_forward = std::min(s.min_forward, r.forward_latency);
    s.max_forward = std::max(s.max_forward, r.forward_latency);
    s.min_reverse = std::min(s.min_reverse, r.reverse_latency);
    s.max_reverse = std::max(s.max_reverse, r.reverse_latency);
    s.min_cycle = std::min(s.min_cycle, r.cycle_time);
    s.max_cycle = std::max(s.max_cycle, r.cycle_time);
    sf += static_cast<double>(r.forward_latency);
    sr += static_cast<double>(r.reverse_latency);
    sc += static_cast<double>(r.cycle_time);
    s.forward_equals_reverse = s.forward_equals_reverse && r.forward_equals_reverse();
  }
  const auto n = static_cast<double>(reports.size());
  s.mean_forward = sf / n;
  s.mean_reverse = sr / n;
  s.mean_cycle = sc / n;
  return s;
}

void write_cycles_csv(std::ostream& os, std::span<const CycleReport> reports) {
  os << "a,b,product,forward,reverse,cycle,transitions\n";
  for (const auto& r : reports) {
    os << r.a << ',' << r.b << ',' << r.product << ',' << r.forward_latency << ','
       << r.reverse_latency << ',' << r.cycle_time << ',' << r.transitions << '\n';
  }
}

nlohmann::ordered_json cycles_to_json(std::span<const CycleReport> reports) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["a"] = r.a;
    j["b"] = r.b;
    j["product"] = r.product;
    j["forward"] = r.forward_latency;
    j["reverse"] = r.reverse_latency;
    j["cycle"] = r.cycle_time;
    j["transitions"] = r.transitions;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace qdi
