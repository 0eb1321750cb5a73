#include "run_config.hpp"

#include "qdi/error.hpp"

namespace qdiwb {

using ojson = nlohmann::ordered_json;

ojson RunConfig::to_json() const {
  ojson j;
  j["command"] = command;
  j["seed"] = seed;
  j["delay_model"] = delay_model;
  j["out"] = out;
  if (command == "gen" || command == "sim" || command == "verify") {
    if (netlist.empty()) {
      j["n"] = n;
      j["fa"] = fa;
      j["protocol"] = protocol;
      j["c3_tree"] = c3_tree;
      j["or4_tree"] = or4_tree;
    } else {
      j["netlist"] = netlist;
    }
    if (!mutate_swap_fa.empty()) j["mutate_swap_fa"] = mutate_swap_fa;
  }
  if (command == "sim" || command == "verify") j["coverage"] = coverage;
  if (command == "sim") {
    j["eager"] = eager;
    j["vcd"] = vcd;
  }
  if (command == "verify") {
    j["checks"] = checks;
    j["di_seeds"] = di_seeds;
    j["di_pairs"] = di_pairs;
    j["weak_orders"] = weak_orders;
  }
  if (command == "bench") {
    j["sizes"] = sizes;
    j["fa"] = fas;
    j["protocols"] = protocols;
    j["pairs"] = pairs;
    j["c3_tree"] = c3_tree;
    j["or4_tree"] = or4_tree;
  }
  if (command == "bench" || command == "report") j["area_table"] = area_table;
  if (command == "report") {
    j["in"] = in;
    j["format"] = format;
  }
  return j;
}

ojson RunConfig::provenance() const {
  return ojson{{"tool", kToolName}, {"version", kToolVersion}, {"config", to_json()}};
}

std::string RunConfig::provenance_line() const {
  return std::string(kToolName) + " " + kToolVersion + " " + to_json().dump();
}

qdi::MultiplierSpec RunConfig::spec() const {
  qdi::MultiplierSpec s;
  s.n = n;
  const auto k = qdi::parse_full_adder_kind(fa);
  if (!k) throw qdi::Error(qdi::ErrorCode::InvalidArgument, "unknown full adder kind '" + fa + "'");
  s.fa_kind = *k;
  const auto p = qdi::parse_protocol(protocol);
  if (!p) throw qdi::Error(qdi::ErrorCode::InvalidArgument, "unknown protocol '" + protocol + "'");
  s.protocol = *p;
  s.c3_as_tree = c3_tree;
  s.or4_as_tree = or4_tree;
  qdi::check_spec(s);
  return s;
}

qdi::DelayModel RunConfig::delays() const { return qdi::DelayModel::parse(delay_model, seed); }

qdi::Coverage RunConfig::operand_coverage() const {
  if (coverage == "exhaustive") return qdi::Coverage::all();
  const std::string prefix = "random:";
  if (coverage.rfind(prefix, 0) == 0) {
    try {
      std::size_t used = 0;
      const auto count = std::stoull(coverage.substr(prefix.size()), &used);
      if (used + prefix.size() == coverage.size() && count > 0) {
        return qdi::Coverage::random(static_cast<std::size_t>(count), seed);
      }
    } catch (const std::exception&) {
    }
  }
  throw qdi::Error(qdi::ErrorCode::InvalidArgument,
                   "coverage must be 'exhaustive' or 'random:<count>', got '" + coverage + "'");
}

}  // namespace qdiwb
