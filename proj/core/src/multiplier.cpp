#include "qdi/multiplier.hpp"

#include <algorithm>
#include <queue>

#include "qdi/error.hpp"

namespace qdi {

namespace {
constexpr const char* kGenerator = "array_multiplier";
}

void check_spec(const MultiplierSpec& spec) {
  if (spec.n < 2 || spec.n > kMaxOperandWidth) {
    throw Error(ErrorCode::InvalidArgument,
                "operand width must be in [2, " + std::to_string(kMaxOperandWidth) + "], got " +
                    std::to_string(spec.n));
  }
}

nlohmann::ordered_json to_json(const MultiplierSpec& s) {
  nlohmann::ordered_json j;
  j["generator"] = kGenerator;
  j["n"] = s.n;
  j["fa"] = std::string(to_string(s.fa_kind));
  j["protocol"] = std::string(to_string(s.protocol));
  j["c3_as_tree"] = s.c3_as_tree;
  j["or4_as_tree"] = s.or4_as_tree;
  return j;
}

std::optional<MultiplierSpec> spec_from_meta(const Netlist& nl) {
  const auto& p = nl.meta().params;
  if (!p.is_object() || p.value("generator", "") != kGenerator) return std::nullopt;
  try {
    MultiplierSpec s;
    s.n = p.at("n").get<int>();
    const auto fa = parse_full_adder_kind(p.at("fa").get<std::string>());
    if (!fa) return std::nullopt;
    s.fa_kind = *fa;
    s.protocol = nl.protocol();
    s.c3_as_tree = p.value("c3_as_tree", false);
    s.or4_as_tree = p.value("or4_as_tree", false);
    return s;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

Netlist generate(const MultiplierSpec& spec) {
  check_spec(spec);
  const auto n = static_cast<std::size_t>(spec.n);
  NetlistBuilder b({spec.c3_as_tree, spec.or4_as_tree});

  std::vector<Rails> raw;
  for (std::size_t j = 0; j < n; ++j) raw.push_back(b.add_input_port("a" + std::to_string(j)));
  for (std::size_t i = 0; i < n; ++i) raw.push_back(b.add_input_port("b" + std::to_string(i)));
  const auto reg = emit_register_bank(b, raw, b.ack_in(), "input_regs");
  const auto a = [&](std::size_t j) { return reg[j]; };
  const auto bb = [&](std::size_t i) { return reg[n + i]; };

  // pp[i][j] = a_j & b_i
  std::vector<std::vector<Rails>> pp(n, std::vector<Rails>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      pp[i][j] = emit_and2_strong(b, a(j), bb(i),
                                  "pp_" + std::to_string(i) + "_" + std::to_string(j));
    }
  }

  std::vector<Rails> product(2 * n);
  product[0] = pp[0][0];

  const std::size_t w = n - 1;  // adders per row
  std::vector<Rails> sum(w), carry(w);
  for (std::size_t row = 1; row < n; ++row) {
    std::vector<Rails> next_sum(w), next_carry(w);
    for (std::size_t j = 0; j < w; ++j) {
      Rails x, z;
      if (row == 1) {
        x = pp[0][j + 1];
        z = emit_constant_source(b, false, "cin_r1_" + std::to_string(j));
      } else {
        x = j + 1 < w ? sum[j + 1] : pp[row - 1][n - 1];
        z = carry[j];
      }
      const auto out = emit_full_adder(b, spec.fa_kind, x, pp[row][j], z,
                                       "fa_r" + std::to_string(row) + "_c" + std::to_string(j));
      next_sum[j] = out.sum;
      next_carry[j] = out.cout;
    }
    sum = std::move(next_sum);
    carry = std::move(next_carry);
    product[row] = sum[0];
  }

  Rails ripple = emit_constant_source(b, false, "cin_final");
  for (std::size_t j = 0; j < w; ++j) {
    const Rails x = j + 1 < w ? sum[j + 1] : pp[n - 1][n - 1];
    const auto out = emit_full_adder(b, spec.fa_kind, x, carry[j], ripple,
                                     "fa_final_c" + std::to_string(j));
    product[n + j] = out.sum;
    ripple = out.cout;
  }
  product[2 * n - 1] = ripple;

  for (std::size_t k = 0; k < 2 * n; ++k) b.add_output_port("p" + std::to_string(k), product[k]);
  b.set_ack_out(emit_completion_detector(b, product, "output_cd"));

  const std::string name = "mult" + std::to_string(n) + "x" + std::to_string(n) + "_" +
                           std::string(to_string(spec.fa_kind));
  auto params = to_json(spec);
  params["protocol"] = std::string(to_string(Protocol::Rtz));
  Netlist nl = std::move(b).build(name, std::move(params));
  require_valid(nl);
  return spec.protocol == Protocol::Rtz ? nl : dualize(nl);
}

StructureStats structure_stats(const Netlist& nl) {
  const auto spec = spec_from_meta(nl);
  if (!spec) throw Error(ErrorCode::NotAGeneratedMultiplier, "netlist '" + nl.meta().name + "'");
  StructureStats s;
  for (const auto& inst : nl.meta().instances) {
    if (inst.cell == "and2_strong") ++s.and_cells;
    if (inst.cell == "full_adder") ++s.full_adders;
    if (inst.cell == "constant_source") ++s.constant_carries;
  }
  for (const auto& g : nl.gates()) {
    if (is_stateful(g.kind)) ++s.c_element_count;
  }
  s.gate_count = nl.gates().size();
  s.product_width = nl.output_ports().size();
  return s;
}

CriticalPath critical_path(const Netlist& nl) {
  CriticalPath cp;
  if (nl.ack_in() == kNoNet || nl.ack_out() == kNoNet) return cp;
  const Net& ack = nl.net(nl.ack_out());
  if (ack.driver != DriverKind::Gate) return cp;
  const GateId sink = ack.driver_gate;

  const auto& gates = nl.gates();
  const std::size_t ng = gates.size();
  std::vector<std::size_t> indeg(ng, 0);
  for (const auto& g : gates) {
    for (NetId in : g.inputs) {
      if (nl.net(in).driver == DriverKind::Gate) ++indeg[static_cast<std::size_t>(g.id)];
    }
  }
  // Kahn order with a min-heap so equal-rank gates are visited by id.
  std::priority_queue<GateId, std::vector<GateId>, std::greater<>> ready;
  for (std::size_t i = 0; i < ng; ++i) {
    if (indeg[i] == 0) ready.push(static_cast<GateId>(i));
  }
  std::vector<GateId> order;
  while (!ready.empty()) {
    const GateId g = ready.top();
    ready.pop();
    order.push_back(g);
    for (const auto& fo : nl.net(gates[static_cast<std::size_t>(g)].output).fanout) {
      if (--indeg[static_cast<std::size_t>(fo.gate)] == 0) ready.push(fo.gate);
    }
  }

  const auto is_register = [&](const Gate& g) {
    return std::find(g.inputs.begin(), g.inputs.end(), nl.ack_in()) != g.inputs.end();
  };

  std::vector<std::size_t> dist(ng, 0);
  std::vector<GateId> pred(ng, kNoGate);
  for (GateId g : order) {
    const Gate& gate = gates[static_cast<std::size_t>(g)];
    auto& d = dist[static_cast<std::size_t>(g)];
    if (is_register(gate)) d = 1;
    for (NetId in : gate.inputs) {
      const Net& net = nl.net(in);
      if (net.driver != DriverKind::Gate) continue;
      const auto pd = dist[static_cast<std::size_t>(net.driver_gate)];
      if (pd == 0) continue;
      auto& p = pred[static_cast<std::size_t>(g)];
      if (pd + 1 > d || (pd + 1 == d && p != kNoGate && net.driver_gate < p)) {
        d = pd + 1;
        p = net.driver_gate;
      }
    }
  }
  cp.forward_length = dist[static_cast<std::size_t>(sink)];
  for (GateId g = sink; g != kNoGate; g = pred[static_cast<std::size_t>(g)]) cp.gates.push_back(g);
  std::reverse(cp.gates.begin(), cp.gates.end());

  // Root-to-register traversal over the reversed graph.
  std::vector<std::size_t> rdist(ng, 0);
  rdist[static_cast<std::size_t>(sink)] = 1;
  std::size_t best = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Gate& gate = gates[static_cast<std::size_t>(*it)];
    const auto d = rdist[static_cast<std::size_t>(*it)];
    if (d == 0) continue;
    if (is_register(gate)) best = std::max(best, d);
    for (NetId in : gate.inputs) {
      const Net& net = nl.net(in);
      if (net.driver != DriverKind::Gate) continue;
      auto& pd = rdist[static_cast<std::size_t>(net.driver_gate)];
      pd = std::max(pd, d + 1);
    }
  }
  cp.reverse_length = best;
  return cp;
}

}  // namespace qdi
