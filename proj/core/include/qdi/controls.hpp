#pragma once

#include <cstddef>
#include <string_view>

#include "qdi/netlist.hpp"

namespace qdi {

// Deliberately broken circuits. Each one must make some checker fail; a
// checker that passes them is not testing anything.

/// Mutation: every consumer of the named full adder's sum rails reads its
/// carry rails instead, and vice versa. Throws Error(InvalidArgument) if no
/// full-adder instance has that name.
Netlist swap_adder_outputs(const Netlist& netlist, std::string_view instance);

struct ForkInjection {
  Netlist netlist;
  GateId buffer = kNoGate;  // give this gate a large delay override
};

/// Splits one branch off a fork: input `slot` of gate `consumer` is fed
/// through a new BUF gate instead of directly, so that branch can be made
/// slower than its siblings.
ForkInjection inject_fork_buffer(const Netlist& netlist, GateId consumer, std::size_t slot);

/// The fork branch that carries operand rail a0^0 into the (A0,B1) minterm
/// of partial product pp_0_0 in a generated multiplier. Delaying it lets a
/// stale A0 pulse meet the next cycle's B1.
struct ForkSite {
  GateId consumer = kNoGate;
  std::size_t slot = 0;
};
ForkSite multiplier_fork_site(const Netlist& multiplier);

/// Two inputs a, b and two outputs y, z that are buffered copies of a. The
/// outputs complete before b arrives.
Netlist early_output_stub(Protocol p);

}  // namespace qdi
