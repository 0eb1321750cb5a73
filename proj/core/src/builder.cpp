#include "qdi/builder.hpp"

#include "qdi/error.hpp"

namespace qdi {

NetId NetlistBuilder::new_net(Level rest) {
  rest_.push_back(rest);
  return static_cast<NetId>(rest_.size() - 1);
}

Rails NetlistBuilder::add_input_port(const std::string& name) {
  Rails r{new_net(0), new_net(0)};
  ports_.push_back({name, PortDir::In, r.rail1, r.rail0});
  return r;
}

void NetlistBuilder::add_output_port(const std::string& name, Rails rails) {
  ports_.push_back({name, PortDir::Out, rails.rail1, rails.rail0});
}

NetId NetlistBuilder::ack_in() {
  if (ack_in_ == kNoNet) ack_in_ = new_net(1);
  return ack_in_;
}

NetId NetlistBuilder::phase() {
  if (meta_.phase == kNoNet) meta_.phase = new_net(0);
  return meta_.phase;
}

NetId NetlistBuilder::new_tie() {
  const NetId t = new_net(0);
  meta_.ties.push_back(t);
  return t;
}

NetId NetlistBuilder::gate(GateKind kind, std::initializer_list<NetId> inputs) {
  return gate(kind, std::span<const NetId>(inputs.begin(), inputs.size()));
}

NetId NetlistBuilder::gate(GateKind kind, std::span<const NetId> inputs) {
  if (inputs.size() != arity(kind)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(to_string(kind)) + " needs " + std::to_string(arity(kind)) + " inputs");
  }
  std::vector<Level> levels;
  for (NetId n : inputs) levels.push_back(rest_.at(static_cast<std::size_t>(n)));
  const Level reset = evaluate(kind, levels, 0);
  const NetId out = new_net(reset);
  gates_.push_back(Gate{static_cast<GateId>(gates_.size()), kind,
                        std::vector<NetId>(inputs.begin(), inputs.end()), out, reset});
  return out;
}

NetId NetlistBuilder::c_element(std::span<const NetId> in) {
  if (in.size() == 2) return gate(GateKind::C2, in);
  if (in.size() == 3) {
    if (!opts_.c3_as_tree) return gate(GateKind::C3, in);
    return gate(GateKind::C2, {gate(GateKind::C2, {in[0], in[1]}), in[2]});
  }
  throw Error(ErrorCode::InvalidArgument, "c_element takes 2 or 3 inputs");
}

NetId NetlistBuilder::or_n(std::span<const NetId> in) {
  switch (in.size()) {
    case 2: return gate(GateKind::Or2, in);
    case 3: return gate(GateKind::Or3, in);
    case 4:
      if (!opts_.or4_as_tree) return gate(GateKind::Or4, in);
      return gate(GateKind::Or2,
                  {gate(GateKind::Or2, {in[0], in[1]}), gate(GateKind::Or2, {in[2], in[3]})});
    default: throw Error(ErrorCode::InvalidArgument, "or_n takes 2 to 4 inputs");
  }
}

Netlist NetlistBuilder::build(const std::string& name, nlohmann::ordered_json params) && {
  meta_.name = name;
  meta_.params = std::move(params);
  return Netlist(Protocol::Rtz, std::move(gates_), std::move(ports_), ack_out_, ack_in_,
                 std::move(meta_));
}

}  // namespace qdi
