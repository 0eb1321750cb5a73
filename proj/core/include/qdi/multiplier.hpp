#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qdi/cells.hpp"
#include "qdi/netlist.hpp"

namespace qdi {

struct MultiplierSpec {
  int n = 4;
  FullAdderKind fa_kind = FullAdderKind::DimsStrong;
  Protocol protocol = Protocol::Rtz;
  bool c3_as_tree = false;
  bool or4_as_tree = false;

  bool operator==(const MultiplierSpec&) const = default;
};

inline constexpr int kMaxOperandWidth = 32;

/// Throws Error(InvalidArgument) unless 2 <= n <= kMaxOperandWidth.
void check_spec(const MultiplierSpec& spec);

nlohmann::ordered_json to_json(const MultiplierSpec& spec);
/// Generator parameters recorded in a netlist, if it came from generate().
std::optional<MultiplierSpec> spec_from_meta(const Netlist& netlist);

/// N x N unsigned array multiplier.
///
/// Partial products pp[i][j] = a_j AND b_i use the strongly indicating AND
/// cell. They are summed by a carry-save array (rows 1..N-1, N-1 adders each,
/// first row fed by constant-0 carries) and a ripple-carry final row whose
/// carry-in is another constant 0. An input register bank sits between the
/// operand ports a0..a{N-1}, b0..b{N-1} and the array; a completion detector
/// over p0..p{2N-1} drives ack_out.
Netlist generate(const MultiplierSpec& spec);

struct StructureStats {
  std::size_t and_cells = 0;
  std::size_t full_adders = 0;
  std::size_t constant_carries = 0;
  std::size_t c_element_count = 0;
  std::size_t gate_count = 0;
  std::size_t product_width = 0;

  bool operator==(const StructureStats&) const = default;
};

/// Throws Error(NotAGeneratedMultiplier) for netlists without generator tags.
StructureStats structure_stats(const Netlist& netlist);

struct CriticalPath {
  std::vector<GateId> gates;       // register first, completion root last
  std::size_t forward_length = 0;  // unit-weight gates on the path
  std::size_t reverse_length = 0;  // same measure traversed root-to-register
};

/// Longest register-to-completion path with unit gate weights. Ties resolve to
/// the lowest gate id so the result is reproducible.
CriticalPath critical_path(const Netlist& netlist);

}  // namespace qdi
