#include "qdi/cells.hpp"

#include <array>

#include "qdi/error.hpp"

namespace qdi {

std::string_view to_string(FullAdderKind k) {
  return k == FullAdderKind::DimsStrong ? "dims" : "weak";
}

std::optional<FullAdderKind> parse_full_adder_kind(std::string_view s) {
  if (s == "dims") return FullAdderKind::DimsStrong;
  if (s == "weak") return FullAdderKind::WeakDisjoint;
  return std::nullopt;
}

const DualRailPort& CellHandle::port(std::string_view name) const {
  const DualRailPort* p = netlist.find_port(name);
  if (!p) throw Error(ErrorCode::InvalidArgument, "cell has no port " + std::string(name));
  return *p;
}

namespace {

NetId rail(Rails r, int bit) { return bit ? r.rail1 : r.rail0; }

NamedRails named(std::string name, Rails r) { return {std::move(name), r.rail1, r.rail0}; }

// Eight minterm C-elements over (x, y, c), indexed 4x + 2y + c.
std::array<NetId, 8> minterms(NetlistBuilder& b, Rails x, Rails y, Rails c) {
  std::array<NetId, 8> m{};
  for (int i = 0; i < 8; ++i) {
    const std::array<NetId, 3> in{rail(x, (i >> 2) & 1), rail(y, (i >> 1) & 1), rail(c, i & 1)};
    m[static_cast<std::size_t>(i)] = b.c_element(in);
  }
  return m;
}

NetId or_of(NetlistBuilder& b, const std::array<NetId, 8>& m, std::initializer_list<int> idx) {
  std::vector<NetId> in;
  for (int i : idx) in.push_back(m[static_cast<std::size_t>(i)]);
  return b.or_n(in);
}

Rails dims_sum(NetlistBuilder& b, const std::array<NetId, 8>& m) {
  return {or_of(b, m, {1, 2, 4, 7}), or_of(b, m, {0, 3, 5, 6})};
}

void record_adder(NetlistBuilder& b, const std::string& cell, const std::string& name,
                  std::string variant, Rails x, Rails y, Rails cin, AdderRails out) {
  b.add_instance({cell, name, std::move(variant),
                  {named("a", x), named("b", y), named("cin", cin), named("sum", out.sum),
                   named("cout", out.cout)}});
}

CellHandle finish(NetlistBuilder&& b, const std::string& name, nlohmann::ordered_json params,
                  Protocol p) {
  params["protocol"] = std::string(to_string(Protocol::Rtz));
  Netlist nl = std::move(b).build(name, std::move(params));
  require_valid(nl);
  return {p == Protocol::Rtz ? std::move(nl) : dualize(nl)};
}

nlohmann::ordered_json cell_params(const std::string& cell, const BuildOptions& o) {
  nlohmann::ordered_json j;
  j["cell"] = cell;
  j["c3_as_tree"] = o.c3_as_tree;
  j["or4_as_tree"] = o.or4_as_tree;
  return j;
}

}  // namespace

Rails emit_and2_strong(NetlistBuilder& b, Rails x, Rails y, const std::string& name) {
  const NetId c11 = b.gate(GateKind::C2, {x.rail1, y.rail1});
  const NetId c10 = b.gate(GateKind::C2, {x.rail1, y.rail0});
  const NetId c01 = b.gate(GateKind::C2, {x.rail0, y.rail1});
  const NetId c00 = b.gate(GateKind::C2, {x.rail0, y.rail0});
  const Rails z{c11, b.gate(GateKind::Or3, {c10, c01, c00})};
  b.add_instance({"and2_strong", name, "", {named("A", x), named("B", y), named("Z", z)}});
  return z;
}

AdderRails emit_full_adder(NetlistBuilder& b, FullAdderKind kind, Rails x, Rails y, Rails cin,
                           const std::string& name) {
  const auto m = minterms(b, x, y, cin);
  AdderRails out;
  out.sum = dims_sum(b, m);
  if (kind == FullAdderKind::DimsStrong) {
    out.cout = {or_of(b, m, {3, 5, 6, 7}), or_of(b, m, {0, 1, 2, 4})};
  } else {
    const NetId g1 = b.gate(GateKind::C2, {x.rail1, y.rail1});
    const std::array<NetId, 3> p1a{x.rail0, y.rail1, cin.rail1};
    const std::array<NetId, 3> p1b{x.rail1, y.rail0, cin.rail1};
    const NetId t1a = b.c_element(p1a);
    const NetId t1b = b.c_element(p1b);
    const NetId g0 = b.gate(GateKind::C2, {x.rail0, y.rail0});
    const std::array<NetId, 3> p0a{x.rail1, y.rail0, cin.rail0};
    const std::array<NetId, 3> p0b{x.rail0, y.rail1, cin.rail0};
    const NetId t0a = b.c_element(p0a);
    const NetId t0b = b.c_element(p0b);
    out.cout = {b.gate(GateKind::Or3, {g1, t1a, t1b}), b.gate(GateKind::Or3, {g0, t0a, t0b})};
  }
  record_adder(b, "full_adder", name, std::string(to_string(kind)), x, y, cin, out);
  return out;
}

AdderRails emit_majority_adder(NetlistBuilder& b, Rails x, Rails y, Rails cin,
                               const std::string& name) {
  const auto m = minterms(b, x, y, cin);
  AdderRails out;
  out.sum = dims_sum(b, m);
  const auto maj = [&](int bit) {
    return b.gate(GateKind::Or3, {b.gate(GateKind::C2, {rail(x, bit), rail(y, bit)}),
                                  b.gate(GateKind::C2, {rail(y, bit), rail(cin, bit)}),
                                  b.gate(GateKind::C2, {rail(x, bit), rail(cin, bit)})});
  };
  out.cout = {maj(1), maj(0)};
  record_adder(b, "full_adder", name, "majority", x, y, cin, out);
  return out;
}

NetId emit_completion_detector(NetlistBuilder& b, std::span<const Rails> ports,
                               const std::string& name) {
  if (ports.empty()) throw Error(ErrorCode::InvalidArgument, "completion detector needs a port");
  std::vector<NetId> level;
  for (const Rails& r : ports) level.push_back(b.gate(GateKind::Or2, {r.rail1, r.rail0}));
  while (level.size() > 1) {
    std::vector<NetId> next;
    for (std::size_t i = 0; i < level.size(); i += 2) {
      next.push_back(i + 1 < level.size() ? b.gate(GateKind::C2, {level[i], level[i + 1]})
                                          : level[i]);
    }
    level = std::move(next);
  }
  b.add_instance({"completion_detector", name, "", {}});
  return level[0];
}

std::vector<Rails> emit_register_bank(NetlistBuilder& b, std::span<const Rails> ports, NetId ack_in,
                                      const std::string& name) {
  std::vector<Rails> out;
  for (const Rails& r : ports) {
    const NetId q1 = b.gate(GateKind::C2, {r.rail1, ack_in});
    const NetId q0 = b.gate(GateKind::C2, {r.rail0, ack_in});
    out.push_back({q1, q0});
  }
  b.add_instance({"register_bank", name, "", {}});
  return out;
}

Rails emit_constant_source(NetlistBuilder& b, bool bit, const std::string& name) {
  const NetId active = b.phase();
  const NetId tie = b.new_tie();
  const Rails q = bit ? Rails{active, tie} : Rails{tie, active};
  b.add_instance({"constant_source", name, bit ? "1" : "0", {named("q", q)}});
  return q;
}

CellHandle make_and2_strong(Protocol p, BuildOptions opts) {
  NetlistBuilder b(opts);
  const Rails x = b.add_input_port("A");
  const Rails y = b.add_input_port("B");
  b.add_output_port("Z", emit_and2_strong(b, x, y));
  return finish(std::move(b), "and2_strong", cell_params("and2_strong", opts), p);
}

CellHandle make_full_adder(FullAdderKind kind, Protocol p, BuildOptions opts) {
  NetlistBuilder b(opts);
  const Rails x = b.add_input_port("a");
  const Rails y = b.add_input_port("b");
  const Rails c = b.add_input_port("cin");
  const AdderRails out = emit_full_adder(b, kind, x, y, c);
  b.add_output_port("sum", out.sum);
  b.add_output_port("cout", out.cout);
  auto params = cell_params("full_adder", opts);
  params["fa"] = std::string(to_string(kind));
  return finish(std::move(b), "full_adder_" + std::string(to_string(kind)), std::move(params), p);
}

CellHandle make_majority_adder(Protocol p, BuildOptions opts) {
  NetlistBuilder b(opts);
  const Rails x = b.add_input_port("a");
  const Rails y = b.add_input_port("b");
  const Rails c = b.add_input_port("cin");
  const AdderRails out = emit_majority_adder(b, x, y, c);
  b.add_output_port("sum", out.sum);
  b.add_output_port("cout", out.cout);
  return finish(std::move(b), "full_adder_majority", cell_params("majority_adder", opts), p);
}

CellHandle make_completion_detector(std::size_t n_ports, Protocol p) {
  if (n_ports == 0) throw Error(ErrorCode::InvalidArgument, "n_ports must be at least 1");
  NetlistBuilder b;
  std::vector<Rails> in;
  for (std::size_t i = 0; i < n_ports; ++i) in.push_back(b.add_input_port("in" + std::to_string(i)));
  b.set_ack_out(emit_completion_detector(b, in));
  auto params = cell_params("completion_detector", {});
  params["n_ports"] = n_ports;
  return finish(std::move(b), "completion_detector", std::move(params), p);
}

CellHandle make_register_bank(std::size_t n_ports, Protocol p) {
  if (n_ports == 0) throw Error(ErrorCode::InvalidArgument, "n_ports must be at least 1");
  NetlistBuilder b;
  std::vector<Rails> in;
  for (std::size_t i = 0; i < n_ports; ++i) in.push_back(b.add_input_port("in" + std::to_string(i)));
  const auto out = emit_register_bank(b, in, b.ack_in());
  for (std::size_t i = 0; i < n_ports; ++i) b.add_output_port("out" + std::to_string(i), out[i]);
  auto params = cell_params("register_bank", {});
  params["n_ports"] = n_ports;
  return finish(std::move(b), "register_bank", std::move(params), p);
}

CellHandle make_constant_source(bool bit, Protocol p) {
  NetlistBuilder b;
  b.add_output_port("q", emit_constant_source(b, bit));
  auto params = cell_params("constant_source", {});
  params["bit"] = bit ? 1 : 0;
  return finish(std::move(b), "constant_source", std::move(params), p);
}

}  // namespace qdi
