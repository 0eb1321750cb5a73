#pragma once

#include <string>
#include <string_view>

#include "qdi/netlist.hpp"

namespace qdi {

/// Netlist JSON text. Output is deterministic: one gate or port per line,
/// keys in schema order, net ids preserved.
std::string serialize(const Netlist& netlist);

/// Strict parse. Unknown fields are rejected; errors are Error(ParseError)
/// naming the line (syntax errors) or the JSON pointer of the offending field.
Netlist deserialize(std::string_view text);

Netlist load_netlist(const std::string& path);
void save_netlist(const Netlist& netlist, const std::string& path);

nlohmann::ordered_json meta_to_json(const Metadata& meta);

}  // namespace qdi
