#include "qdi/controls.hpp"

#include <algorithm>
#include <unordered_map>

#include "qdi/builder.hpp"
#include "qdi/error.hpp"

namespace qdi {

namespace {

const CellInstance& find_instance(const Netlist& nl, std::string_view name) {
  for (const auto& inst : nl.meta().instances) {
    if (inst.name == name) return inst;
  }
  throw Error(ErrorCode::InvalidArgument, "no cell instance named '" + std::string(name) + "'");
}

const NamedRails& instance_port(const CellInstance& inst, std::string_view port) {
  for (const auto& p : inst.ports) {
    if (p.name == port) return p;
  }
  throw Error(ErrorCode::InvalidArgument,
              "instance '" + inst.name + "' has no port '" + std::string(port) + "'");
}

}  // namespace

Netlist swap_adder_outputs(const Netlist& nl, std::string_view instance) {
  const auto& inst = find_instance(nl, instance);
  if (inst.cell != "full_adder") {
    throw Error(ErrorCode::InvalidArgument, "'" + inst.name + "' is not a full adder");
  }
  const auto& s = instance_port(inst, "sum");
  const auto& c = instance_port(inst, "cout");
  const std::unordered_map<NetId, NetId> swap{
      {s.rail1, c.rail1}, {c.rail1, s.rail1}, {s.rail0, c.rail0}, {c.rail0, s.rail0}};
  auto remap = [&](NetId n) {
    const auto it = swap.find(n);
    return it == swap.end() ? n : it->second;
  };

  std::vector<Gate> gates = nl.gates();
  for (auto& g : gates) {
    for (auto& in : g.inputs) in = remap(in);
  }
  std::vector<DualRailPort> ports = nl.ports();
  for (auto& p : ports) {
    if (p.dir == PortDir::Out) {
      p.rail1 = remap(p.rail1);
      p.rail0 = remap(p.rail0);
    }
  }
  Metadata meta = nl.meta();
  meta.name += "_swap_" + inst.name;
  meta.params["mutation"] = "swap_sum_cout:" + inst.name;
  return Netlist(nl.protocol(), std::move(gates), std::move(ports), nl.ack_out(), nl.ack_in(),
                 std::move(meta));
}

ForkInjection inject_fork_buffer(const Netlist& nl, GateId consumer, std::size_t slot) {
  if (consumer < 0 || static_cast<std::size_t>(consumer) >= nl.gates().size()) {
    throw Error(ErrorCode::InvalidArgument, "no gate " + std::to_string(consumer));
  }
  const Gate& target = nl.gate(consumer);
  if (slot >= target.inputs.size()) {
    throw Error(ErrorCode::InvalidArgument, "gate " + std::to_string(consumer) + " has no slot " +
                                                std::to_string(slot));
  }
  const NetId src = target.inputs[slot];
  std::vector<Gate> gates = nl.gates();
  const auto branch = static_cast<NetId>(nl.net_count());
  const auto buf = static_cast<GateId>(gates.size());
  gates[static_cast<std::size_t>(consumer)].inputs[slot] = branch;
  gates.push_back(Gate{buf, GateKind::Buf, {src}, branch, nl.rest_level(src)});
  Metadata meta = nl.meta();
  meta.params["fault"] = "fork_buffer:" + std::to_string(consumer) + "." + std::to_string(slot);
  return {Netlist(nl.protocol(), std::move(gates), nl.ports(), nl.ack_out(), nl.ack_in(),
                  std::move(meta)),
          buf};
}

ForkSite multiplier_fork_site(const Netlist& nl) {
  const auto& inst = find_instance(nl, "pp_0_0");
  const auto& a = instance_port(inst, "A");
  const auto& b = instance_port(inst, "B");
  for (const auto& g : nl.gates()) {
    if (g.kind == GateKind::C2 && g.inputs.size() == 2 && g.inputs[0] == a.rail0 &&
        g.inputs[1] == b.rail1) {
      return {g.id, 0};
    }
  }
  throw Error(ErrorCode::NotAGeneratedMultiplier, "pp_0_0 has no (A0,B1) minterm");
}

Netlist early_output_stub(Protocol p) {
  NetlistBuilder b;
  const Rails a = b.add_input_port("a");
  b.add_input_port("b");
  b.add_output_port("y", {b.gate(GateKind::Buf, {a.rail1}), b.gate(GateKind::Buf, {a.rail0})});
  b.add_output_port("z", {b.gate(GateKind::Buf, {a.rail1}), b.gate(GateKind::Buf, {a.rail0})});
  nlohmann::ordered_json params;
  params["cell"] = "early_output_stub";
  params["protocol"] = "rtz";
  Netlist nl = std::move(b).build("early_output_stub", params);
  return p == Protocol::Rto ? dualize(nl) : nl;
}

}  // namespace qdi
