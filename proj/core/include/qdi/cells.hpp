#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qdi/builder.hpp"
#include "qdi/netlist.hpp"

namespace qdi {

/// Reference full adders.
///  - DimsStrong: eight 3-input minterm C-elements shared by the sum and carry
///    OR4 combiners; strongly indicating.
///  - WeakDisjoint: DIMS sum rails plus a carry built from pairwise disjoint
///    terms, so the carry may complete from the two addends alone.
enum class FullAdderKind : std::uint8_t { DimsStrong, WeakDisjoint };

std::string_view to_string(FullAdderKind k);
std::optional<FullAdderKind> parse_full_adder_kind(std::string_view s);

/// A standalone cell netlist with named dual-rail ports.
struct CellHandle {
  Netlist netlist;

  const DualRailPort& port(std::string_view name) const;
};

struct AdderRails {
  Rails sum;
  Rails cout;
};

// Emitters append RTZ-polarity structure to a builder and record a
// CellInstance; generators call these and dualize the finished netlist.

Rails emit_and2_strong(NetlistBuilder& b, Rails x, Rails y, const std::string& name = "and2");
AdderRails emit_full_adder(NetlistBuilder& b, FullAdderKind kind, Rails x, Rails y, Rails cin,
                           const std::string& name = "fa");
/// Majority-form carry (three overlapping C2 terms per rail). Not indicating
/// cleanly: kept as the negative control for the orphan checks.
AdderRails emit_majority_adder(NetlistBuilder& b, Rails x, Rails y, Rails cin,
                               const std::string& name = "fa_majority");
NetId emit_completion_detector(NetlistBuilder& b, std::span<const Rails> ports,
                               const std::string& name = "cd");
std::vector<Rails> emit_register_bank(NetlistBuilder& b, std::span<const Rails> ports, NetId ack_in,
                                      const std::string& name = "regs");
/// Dual-rail constant driven from the phase line: the rail selected by `bit`
/// follows the phase, the other is a tie held at the spacer level.
Rails emit_constant_source(NetlistBuilder& b, bool bit, const std::string& name = "const");

/// Ports A, B -> Z.
CellHandle make_and2_strong(Protocol p, BuildOptions opts = {});
/// Ports a, b, cin -> sum, cout.
CellHandle make_full_adder(FullAdderKind kind, Protocol p, BuildOptions opts = {});
CellHandle make_majority_adder(Protocol p, BuildOptions opts = {});
/// Ports in0..in{n-1}; the root drives the netlist ack_out.
CellHandle make_completion_detector(std::size_t n_ports, Protocol p);
/// Ports in0.. -> out0..; every register also reads the netlist ack_in.
CellHandle make_register_bank(std::size_t n_ports, Protocol p);
/// Port q; reads the netlist phase line.
CellHandle make_constant_source(bool bit, Protocol p);

}  // namespace qdi
