#include "qdi/trace_export.hpp"

#include <string>
#include <vector>

namespace qdi {

void write_trace_csv(std::ostream& os, const Trace& trace) {
  os << "time,net,level,cause\n";
  for (const auto& ev : trace) {
    os << ev.time << ',' << ev.net << ',' << static_cast<int>(ev.level) << ',';
    if (ev.cause == kEnvironment) {
      os << "env";
    } else {
      os << ev.cause;
    }
    os << '\n';
  }
}

namespace {

// Printable VCD identifiers, base 94 starting at '!'.
std::string vcd_id(std::size_t n) {
  std::string s;
  do {
    s += static_cast<char>('!' + n % 94);
    n /= 94;
  } while (n);
  return s;
}

}  // namespace

void write_vcd(std::ostream& os, const Netlist& nl, const Trace& trace, std::string_view timescale) {
  std::vector<std::string> names(nl.net_count());
  for (std::size_t i = 0; i < names.size(); ++i) names[i] = "n" + std::to_string(i);
  for (const auto& p : nl.ports()) {
    names[static_cast<std::size_t>(p.rail1)] = p.name + "_1";
    names[static_cast<std::size_t>(p.rail0)] = p.name + "_0";
  }
  if (nl.ack_out() != kNoNet) names[static_cast<std::size_t>(nl.ack_out())] = "ack_out";
  if (nl.ack_in() != kNoNet) names[static_cast<std::size_t>(nl.ack_in())] = "ack_in";
  if (nl.meta().phase != kNoNet) names[static_cast<std::size_t>(nl.meta().phase)] = "phase";

  os << "$version qdiwb $end\n";
  os << "$timescale " << timescale << " $end\n";
  os << "$scope module " << (nl.meta().name.empty() ? "top" : nl.meta().name) << " $end\n";
  for (std::size_t i = 0; i < names.size(); ++i) {
    os << "$var wire 1 " << vcd_id(i) << ' ' << names[i] << " $end\n";
  }
  os << "$upscope $end\n$enddefinitions $end\n";
  os << "#0\n$dumpvars\n";
  for (std::size_t i = 0; i < names.size(); ++i) {
    os << static_cast<int>(nl.rest_level(static_cast<NetId>(i))) << vcd_id(i) << '\n';
  }
  os << "$end\n";
  bool first = true;
  Time last = 0;
  for (const auto& ev : trace) {
    if (first || ev.time != last) {
      os << '#' << ev.time << '\n';
      last = ev.time;
      first = false;
    }
    os << static_cast<int>(ev.level) << vcd_id(static_cast<std::size_t>(ev.net)) << '\n';
  }
}

}  // namespace qdi
