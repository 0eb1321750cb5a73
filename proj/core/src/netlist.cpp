#include "qdi/netlist.hpp"

#include <algorithm>
#include <sstream>

#include "qdi/error.hpp"

namespace qdi {

std::string_view to_string(Protocol p) { return p == Protocol::Rtz ? "rtz" : "rto"; }

std::optional<Protocol> parse_protocol(std::string_view s) {
  if (s == "rtz") return Protocol::Rtz;
  if (s == "rto") return Protocol::Rto;
  return std::nullopt;
}

std::size_t arity(GateKind k) {
  switch (k) {
    case GateKind::Not:
    case GateKind::Buf: return 1;
    case GateKind::And2:
    case GateKind::Or2:
    case GateKind::C2: return 2;
    case GateKind::And3:
    case GateKind::Or3:
    case GateKind::C3: return 3;
    case GateKind::And4:
    case GateKind::Or4: return 4;
  }
  return 0;
}

bool is_stateful(GateKind k) { return k == GateKind::C2 || k == GateKind::C3; }

bool is_and(GateKind k) {
  return k == GateKind::And2 || k == GateKind::And3 || k == GateKind::And4;
}

bool is_or(GateKind k) { return k == GateKind::Or2 || k == GateKind::Or3 || k == GateKind::Or4; }

GateKind dual(GateKind k) {
  switch (k) {
    case GateKind::And2: return GateKind::Or2;
    case GateKind::And3: return GateKind::Or3;
    case GateKind::And4: return GateKind::Or4;
    case GateKind::Or2: return GateKind::And2;
    case GateKind::Or3: return GateKind::And3;
    case GateKind::Or4: return GateKind::And4;
    default: return k;
  }
}

std::string_view to_string(GateKind k) {
  switch (k) {
    case GateKind::And2: return "AND2";
    case GateKind::And3: return "AND3";
    case GateKind::And4: return "AND4";
    case GateKind::Or2: return "OR2";
    case GateKind::Or3: return "OR3";
    case GateKind::Or4: return "OR4";
    case GateKind::Not: return "NOT";
    case GateKind::Buf: return "BUF";
    case GateKind::C2: return "C2";
    case GateKind::C3: return "C3";
  }
  return "?";
}

std::optional<GateKind> parse_gate_kind(std::string_view s) {
  for (GateKind k : kAllGateKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

Level evaluate(GateKind k, std::span<const Level> in, Level held) {
  switch (k) {
    case GateKind::Not: return in[0] ? 0 : 1;
    case GateKind::Buf: return in[0];
    case GateKind::And2:
    case GateKind::And3:
    case GateKind::And4:
      return std::all_of(in.begin(), in.end(), [](Level v) { return v != 0; }) ? 1 : 0;
    case GateKind::Or2:
    case GateKind::Or3:
    case GateKind::Or4:
      return std::any_of(in.begin(), in.end(), [](Level v) { return v != 0; }) ? 1 : 0;
    case GateKind::C2:
    case GateKind::C3: {
      const bool all_high = std::all_of(in.begin(), in.end(), [](Level v) { return v != 0; });
      const bool all_low = std::none_of(in.begin(), in.end(), [](Level v) { return v != 0; });
      if (all_high) return 1;
      if (all_low) return 0;
      return held;
    }
  }
  return held;
}

Netlist::Netlist(Protocol protocol, std::vector<Gate> gates, std::vector<DualRailPort> ports,
                 NetId ack_out, NetId ack_in, Metadata meta)
    : protocol_(protocol),
      gates_(std::move(gates)),
      ack_out_(ack_out),
      ack_in_(ack_in),
      meta_(std::move(meta)) {
  for (auto& p : ports) {
    (p.dir == PortDir::In ? inputs_ : outputs_).push_back(std::move(p));
  }
  index_nets();
}

std::vector<DualRailPort> Netlist::ports() const {
  std::vector<DualRailPort> all = inputs_;
  all.insert(all.end(), outputs_.begin(), outputs_.end());
  return all;
}

const DualRailPort* Netlist::find_port(std::string_view name) const {
  for (const auto* list : {&inputs_, &outputs_}) {
    for (const auto& p : *list) {
      if (p.name == name) return &p;
    }
  }
  return nullptr;
}

void Netlist::index_nets() {
  NetId max_id = -1;
  auto see = [&](NetId n) { max_id = std::max(max_id, n); };
  for (const auto& g : gates_) {
    see(g.output);
    for (NetId n : g.inputs) see(n);
  }
  for (const auto* list : {&inputs_, &outputs_}) {
    for (const auto& p : *list) {
      see(p.rail1);
      see(p.rail0);
    }
  }
  see(ack_out_);
  see(ack_in_);
  see(meta_.phase);
  for (NetId t : meta_.ties) see(t);

  nets_.assign(static_cast<std::size_t>(max_id + 1), Net{});
  for (std::size_t i = 0; i < nets_.size(); ++i) nets_[i].id = static_cast<NetId>(i);

  auto drive = [&](NetId n, DriverKind kind, GateId g) {
    if (n < 0) return;
    Net& net = nets_[static_cast<std::size_t>(n)];
    if (net.driver_count == 0) {
      net.driver = kind;
      net.driver_gate = g;
    }
    ++net.driver_count;
  };
  for (const auto& g : gates_) drive(g.output, DriverKind::Gate, g.id);
  for (const auto& p : inputs_) {
    drive(p.rail1, DriverKind::PrimaryInput, kNoGate);
    if (p.rail0 != p.rail1) drive(p.rail0, DriverKind::PrimaryInput, kNoGate);
  }
  drive(ack_in_, DriverKind::PrimaryInput, kNoGate);
  drive(meta_.phase, DriverKind::PrimaryInput, kNoGate);
  for (NetId t : meta_.ties) drive(t, DriverKind::Constant, kNoGate);

  for (const auto& g : gates_) {
    for (std::uint32_t s = 0; s < g.inputs.size(); ++s) {
      if (g.inputs[s] >= 0) nets_[static_cast<std::size_t>(g.inputs[s])].fanout.push_back({g.id, s});
    }
  }
  for (auto& n : nets_) n.isochronic = n.fanout.size() >= 2;
}

Level Netlist::rest_level(NetId id) const {
  const Net& n = net(id);
  if (n.driver == DriverKind::Gate) return gate(n.driver_gate).reset;
  if (id == ack_in_) return spacer_level(protocol_) ? 0 : 1;
  return spacer_level(protocol_);
}

bool Netlist::is_primary(NetId id) const {
  return id >= 0 && static_cast<std::size_t>(id) < nets_.size() &&
         nets_[static_cast<std::size_t>(id)].driver == DriverKind::PrimaryInput;
}

bool Netlist::operator==(const Netlist& o) const {
  return protocol_ == o.protocol_ && gates_ == o.gates_ && inputs_ == o.inputs_ &&
         outputs_ == o.outputs_ && ack_out_ == o.ack_out_ && ack_in_ == o.ack_in_ &&
         meta_ == o.meta_;
}

std::string_view to_string(DiagnosticCode c) {
  switch (c) {
    case DiagnosticCode::UnconnectedInput: return "UNCONNECTED_INPUT";
    case DiagnosticCode::MultipleDrivers: return "MULTIPLE_DRIVERS";
    case DiagnosticCode::ArityMismatch: return "ARITY_MISMATCH";
    case DiagnosticCode::CombinationalLoop: return "COMBINATIONAL_LOOP";
    case DiagnosticCode::DanglingOutput: return "DANGLING_OUTPUT";
    case DiagnosticCode::InvalidPort: return "INVALID_PORT";
  }
  return "?";
}

namespace {

// Finds a cycle among combinational gates; C-elements break every loop.
void find_combinational_loops(const Netlist& nl, std::vector<Diagnostic>& out) {
  const auto& gates = nl.gates();
  enum : std::uint8_t { kWhite, kGrey, kBlack };
  std::vector<std::uint8_t> color(gates.size(), kWhite);
  std::vector<std::pair<GateId, std::size_t>> stack;

  for (const auto& root : gates) {
    if (is_stateful(root.kind) || color[static_cast<std::size_t>(root.id)] != kWhite) continue;
    stack.push_back({root.id, 0});
    color[static_cast<std::size_t>(root.id)] = kGrey;
    while (!stack.empty()) {
      auto& [gid, next] = stack.back();
      const Gate& g = gates[static_cast<std::size_t>(gid)];
      static const std::vector<Fanout> kNone;
      const auto& fo = g.output >= 0 && static_cast<std::size_t>(g.output) < nl.net_count()
                           ? nl.net(g.output).fanout
                           : kNone;
      if (next < fo.size()) {
        const GateId succ = fo[next++].gate;
        if (is_stateful(gates[static_cast<std::size_t>(succ)].kind)) continue;
        auto& c = color[static_cast<std::size_t>(succ)];
        if (c == kGrey) {
          out.push_back({DiagnosticCode::CombinationalLoop,
                         "combinational loop through gate " + std::to_string(succ), succ, kNoNet});
        } else if (c == kWhite) {
          c = kGrey;
          stack.push_back({succ, 0});
        }
      } else {
        color[static_cast<std::size_t>(gid)] = kBlack;
        stack.pop_back();
      }
    }
  }
}

}  // namespace

std::vector<Diagnostic> validate(const Netlist& nl) {
  std::vector<Diagnostic> out;
  const auto has_driver = [&](NetId n) {
    return n >= 0 && static_cast<std::size_t>(n) < nl.net_count() &&
           nl.net(n).driver != DriverKind::None;
  };

  for (const auto& g : nl.gates()) {
    if (g.inputs.size() != arity(g.kind)) {
      out.push_back({DiagnosticCode::ArityMismatch,
                     "gate " + std::to_string(g.id) + " (" + std::string(to_string(g.kind)) +
                         ") has " + std::to_string(g.inputs.size()) + " inputs",
                     g.id, kNoNet});
    }
    for (std::size_t s = 0; s < g.inputs.size(); ++s) {
      if (!has_driver(g.inputs[s])) {
        out.push_back({DiagnosticCode::UnconnectedInput,
                       "gate " + std::to_string(g.id) + " input " + std::to_string(s) +
                           " has no driver",
                       g.id, g.inputs[s]});
      }
    }
    if (g.output < 0) {
      out.push_back({DiagnosticCode::DanglingOutput,
                     "gate " + std::to_string(g.id) + " has no output net", g.id, kNoNet});
    }
  }
  for (const auto& n : nl.nets()) {
    if (n.driver_count > 1) {
      out.push_back({DiagnosticCode::MultipleDrivers,
                     "net " + std::to_string(n.id) + " has " + std::to_string(n.driver_count) +
                         " drivers",
                     kNoGate, n.id});
    }
  }
  for (const auto& p : nl.ports()) {
    if (p.rail1 < 0 || p.rail0 < 0 || p.rail1 == p.rail0) {
      out.push_back({DiagnosticCode::InvalidPort, "port " + p.name + " needs two distinct rails",
                     kNoGate, p.rail1});
      continue;
    }
    if (p.dir == PortDir::Out) {
      for (NetId r : {p.rail1, p.rail0}) {
        if (!has_driver(r)) {
          out.push_back({DiagnosticCode::DanglingOutput,
                         "output port " + p.name + " rail " + std::to_string(r) + " is undriven",
                         kNoGate, r});
        }
      }
    }
  }
  if (nl.ack_out() != kNoNet && !has_driver(nl.ack_out())) {
    out.push_back({DiagnosticCode::DanglingOutput, "ack_out is undriven", kNoGate, nl.ack_out()});
  }
  find_combinational_loops(nl, out);
  return out;
}

void require_valid(const Netlist& nl) {
  const auto diags = validate(nl);
  if (diags.empty()) return;
  std::ostringstream os;
  os << diags.size() << " diagnostic(s):";
  for (const auto& d : diags) os << ' ' << to_string(d.code) << " (" << d.message << ");";
  throw Error(ErrorCode::InvalidNetlist, os.str());
}

Netlist dualize(const Netlist& nl) {
  std::vector<Gate> gates = nl.gates();
  for (auto& g : gates) {
    g.kind = dual(g.kind);
    g.reset = g.reset ? 0 : 1;
  }
  Metadata meta = nl.meta();
  const Protocol flipped = flip(nl.protocol());
  if (meta.params.contains("protocol")) meta.params["protocol"] = std::string(to_string(flipped));
  return Netlist(flipped, std::move(gates), nl.ports(), nl.ack_out(), nl.ack_in(), std::move(meta));
}

}  // namespace qdi
