#pragma once

#include <ostream>

#include "qdi/simulator.hpp"

namespace qdi {

/// `time,net,level,cause` with a header row; cause is a gate id or "env".
void write_trace_csv(std::ostream& os, const Trace& trace);

/// Value change dump of every net. Port rails are named <port>_1 / <port>_0,
/// acknowledge nets ack_out / ack_in, other nets n<id>.
void write_vcd(std::ostream& os, const Netlist& netlist, const Trace& trace,
               std::string_view timescale = "1ns");

}  // namespace qdi
