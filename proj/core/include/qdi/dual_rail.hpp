#pragma once

#include <cstdint>
#include <string_view>

#include "qdi/netlist.hpp"

namespace qdi {

enum class DualRailValue : std::uint8_t { Data0, Data1, Spacer, Illegal };

std::string_view to_string(DualRailValue v);

struct RailPair {
  Level rail1 = 0;
  Level rail0 = 0;
  bool operator==(const RailPair&) const = default;
};

/// Data codeword for `bit`. RTZ raises the selected rail, RTO lowers it.
constexpr RailPair encode(bool bit, Protocol p) {
  const Level active = p == Protocol::Rtz ? 1 : 0;
  const Level idle = active ? 0 : 1;
  return bit ? RailPair{active, idle} : RailPair{idle, active};
}

constexpr RailPair spacer(Protocol p) { return {spacer_level(p), spacer_level(p)}; }

/// Never fails: the non-code pattern decodes to Illegal.
constexpr DualRailValue decode(RailPair r, Protocol p) {
  const Level s = spacer_level(p);
  if (r.rail1 == s && r.rail0 == s) return DualRailValue::Spacer;
  if (r.rail1 != s && r.rail0 != s) return DualRailValue::Illegal;
  return r.rail1 != s ? DualRailValue::Data1 : DualRailValue::Data0;
}

constexpr bool is_data(DualRailValue v) {
  return v == DualRailValue::Data0 || v == DualRailValue::Data1;
}

}  // namespace qdi
