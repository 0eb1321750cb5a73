#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qdi {

using NetId = std::int32_t;
using GateId = std::int32_t;
using Level = std::uint8_t;

inline constexpr NetId kNoNet = -1;
inline constexpr GateId kNoGate = -1;

enum class Protocol : std::uint8_t { Rtz, Rto };

std::string_view to_string(Protocol p);
std::optional<Protocol> parse_protocol(std::string_view s);

/// Rail level that both rails hold while a port carries the spacer.
constexpr Level spacer_level(Protocol p) { return p == Protocol::Rtz ? 0 : 1; }
constexpr Protocol flip(Protocol p) { return p == Protocol::Rtz ? Protocol::Rto : Protocol::Rtz; }

// BUF exists for fork-delay fault injection; the generators never emit it.
enum class GateKind : std::uint8_t { And2, And3, And4, Or2, Or3, Or4, Not, Buf, C2, C3 };

inline constexpr GateKind kAllGateKinds[] = {
    GateKind::And2, GateKind::And3, GateKind::And4, GateKind::Or2, GateKind::Or3,
    GateKind::Or4,  GateKind::Not,  GateKind::Buf,  GateKind::C2,  GateKind::C3,
};

std::size_t arity(GateKind k);
bool is_stateful(GateKind k);
bool is_and(GateKind k);
bool is_or(GateKind k);
/// AND/OR gates, the terms-combining gates the orphan checks look at.
inline bool is_combiner(GateKind k) { return is_and(k) || is_or(k); }
/// AND<->OR of equal arity; NOT, BUF and C-elements map to themselves.
GateKind dual(GateKind k);
std::string_view to_string(GateKind k);
std::optional<GateKind> parse_gate_kind(std::string_view s);

/// Output of a gate given its input levels. `held` is the current output, used
/// by the C-element hold rule and ignored by combinational kinds.
Level evaluate(GateKind k, std::span<const Level> inputs, Level held);

struct Gate {
  GateId id = kNoGate;
  GateKind kind = GateKind::And2;
  std::vector<NetId> inputs;  // kNoNet marks an unconnected slot
  NetId output = kNoNet;
  Level reset = 0;

  bool operator==(const Gate&) const = default;
};

enum class DriverKind : std::uint8_t { None, Gate, PrimaryInput, Constant };

struct Fanout {
  GateId gate;
  std::uint32_t slot;
  bool operator==(const Fanout&) const = default;
};

struct Net {
  NetId id = kNoNet;
  DriverKind driver = DriverKind::None;
  GateId driver_gate = kNoGate;
  int driver_count = 0;
  std::vector<Fanout> fanout;
  bool isochronic = false;
};

enum class PortDir : std::uint8_t { In, Out };

struct DualRailPort {
  std::string name;
  PortDir dir = PortDir::In;
  NetId rail1 = kNoNet;
  NetId rail0 = kNoNet;

  bool operator==(const DualRailPort&) const = default;
};

struct NamedRails {
  std::string name;
  NetId rail1 = kNoNet;
  NetId rail0 = kNoNet;
  bool operator==(const NamedRails&) const = default;
};

/// Record of one cell placed by a generator.
struct CellInstance {
  std::string cell;     // constructor name, e.g. "and2_strong"
  std::string name;     // instance name, e.g. "pp_1_2"
  std::string variant;  // e.g. full adder kind; may be empty
  std::vector<NamedRails> ports;

  bool operator==(const CellInstance&) const = default;
};

struct Metadata {
  std::string name;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<CellInstance> instances;
  /// Environment phase line feeding constant sources.
  NetId phase = kNoNet;
  /// Nets held at the spacer level for the whole run.
  std::vector<NetId> ties;

  bool operator==(const Metadata&) const = default;
};

/// Immutable gate-level circuit. Net records are derived from the gates,
/// ports and acknowledge nets at construction.
class Netlist {
 public:
  Netlist() = default;
  Netlist(Protocol protocol, std::vector<Gate> gates, std::vector<DualRailPort> ports,
          NetId ack_out, NetId ack_in, Metadata meta);

  Protocol protocol() const { return protocol_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<Net>& nets() const { return nets_; }
  const std::vector<DualRailPort>& input_ports() const { return inputs_; }
  const std::vector<DualRailPort>& output_ports() const { return outputs_; }
  /// Inputs followed by outputs.
  std::vector<DualRailPort> ports() const;
  NetId ack_out() const { return ack_out_; }
  NetId ack_in() const { return ack_in_; }
  const Metadata& meta() const { return meta_; }

  const Gate& gate(GateId id) const { return gates_.at(static_cast<std::size_t>(id)); }
  const Net& net(NetId id) const { return nets_.at(static_cast<std::size_t>(id)); }
  std::size_t net_count() const { return nets_.size(); }

  const DualRailPort* find_port(std::string_view name) const;

  /// Level of every net in the idle (spacer, Step-1) state.
  Level rest_level(NetId id) const;
  bool is_primary(NetId id) const;

  bool operator==(const Netlist& other) const;

 private:
  void index_nets();

  Protocol protocol_ = Protocol::Rtz;
  std::vector<Gate> gates_;
  std::vector<DualRailPort> inputs_;
  std::vector<DualRailPort> outputs_;
  NetId ack_out_ = kNoNet;
  NetId ack_in_ = kNoNet;
  Metadata meta_;
  std::vector<Net> nets_;
};

enum class DiagnosticCode : std::uint8_t {
  UnconnectedInput,
  MultipleDrivers,
  ArityMismatch,
  CombinationalLoop,
  DanglingOutput,
  InvalidPort,
};

std::string_view to_string(DiagnosticCode c);

struct Diagnostic {
  DiagnosticCode code;
  std::string message;
  GateId gate = kNoGate;
  NetId net = kNoNet;
};

/// Structural checks; an empty result means the simulator accepts the netlist.
std::vector<Diagnostic> validate(const Netlist& netlist);

/// Throws Error(InvalidNetlist) listing the diagnostics when validation fails.
void require_valid(const Netlist& netlist);

/// RTZ <-> RTO transformation: swap AND/OR kinds, complement every reset level
/// and flip the protocol. Involutive.
Netlist dualize(const Netlist& netlist);

}  // namespace qdi
