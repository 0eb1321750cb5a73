#include "qdi/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "qdi/error.hpp"

namespace qdi {

using ojson = nlohmann::ordered_json;
using json = nlohmann::ordered_json;

namespace {

ojson rails_json(NetId r1, NetId r0) { return ojson::array({r1, r0}); }

ojson gate_json(const Gate& g) {
  ojson j;
  j["id"] = g.id;
  j["kind"] = to_string(g.kind);
  j["inputs"] = g.inputs;
  j["output"] = g.output;
  j["reset"] = g.reset;
  return j;
}

ojson port_json(const DualRailPort& p) {
  ojson j;
  j["name"] = p.name;
  j["dir"] = p.dir == PortDir::In ? "in" : "out";
  j["rail1"] = p.rail1;
  j["rail0"] = p.rail0;
  return j;
}

[[noreturn]] void fail(const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::ParseError, "at " + pointer + ": " + what);
}

void only_keys(const json& obj, const std::string& ptr, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(ptr, "expected object");
  for (const auto& [k, _] : obj.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* allowed) { return k == allowed; })) {
      fail(ptr + "/" + k, "unknown field");
    }
  }
}

const json& field(const json& obj, const std::string& ptr, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ptr + "/" + key, "missing field");
  return *it;
}

std::int64_t as_int(const json& v, const std::string& ptr, std::int64_t lo) {
  if (!v.is_number_integer()) fail(ptr, "expected integer");
  const auto x = v.get<std::int64_t>();
  if (x < lo || x > INT32_MAX) fail(ptr, "integer out of range");
  return x;
}

NetId as_net(const json& v, const std::string& ptr, bool allow_none) {
  return static_cast<NetId>(as_int(v, ptr, allow_none ? -1 : 0));
}

std::string as_string(const json& v, const std::string& ptr) {
  if (!v.is_string()) fail(ptr, "expected string");
  return v.get<std::string>();
}

std::pair<NetId, NetId> as_rails(const json& v, const std::string& ptr) {
  if (!v.is_array() || v.size() != 2) fail(ptr, "expected [rail1, rail0]");
  return {as_net(v[0], ptr + "/0", false), as_net(v[1], ptr + "/1", false)};
}

Metadata parse_meta(const json& j, const std::string& ptr) {
  only_keys(j, ptr, {"name", "params", "phase", "ties", "instances"});
  Metadata m;
  if (j.contains("name")) m.name = as_string(j["name"], ptr + "/name");
  if (j.contains("params")) {
    if (!j["params"].is_object()) fail(ptr + "/params", "expected object");
    m.params = j["params"];
  }
  if (j.contains("phase")) m.phase = as_net(j["phase"], ptr + "/phase", true);
  if (j.contains("ties")) {
    const auto& t = j["ties"];
    if (!t.is_array()) fail(ptr + "/ties", "expected array");
    for (std::size_t i = 0; i < t.size(); ++i) {
      m.ties.push_back(as_net(t[i], ptr + "/ties/" + std::to_string(i), false));
    }
  }
  if (j.contains("instances")) {
    const auto& arr = j["instances"];
    if (!arr.is_array()) fail(ptr + "/instances", "expected array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string ip = ptr + "/instances/" + std::to_string(i);
      only_keys(arr[i], ip, {"cell", "name", "variant", "ports"});
      CellInstance inst;
      inst.cell = as_string(field(arr[i], ip, "cell"), ip + "/cell");
      inst.name = as_string(field(arr[i], ip, "name"), ip + "/name");
      if (arr[i].contains("variant")) inst.variant = as_string(arr[i]["variant"], ip + "/variant");
      if (arr[i].contains("ports")) {
        const auto& ports = arr[i]["ports"];
        if (!ports.is_object()) fail(ip + "/ports", "expected object");
        for (const auto& [name, rails] : ports.items()) {
          auto [r1, r0] = as_rails(rails, ip + "/ports/" + name);
          inst.ports.push_back({name, r1, r0});
        }
      }
      m.instances.push_back(std::move(inst));
    }
  }
  return m;
}

}  // namespace

ojson meta_to_json(const Metadata& m) {
  ojson j;
  j["name"] = m.name;
  j["params"] = m.params;
  if (m.phase != kNoNet) j["phase"] = m.phase;
  if (!m.ties.empty()) j["ties"] = m.ties;
  ojson inst = ojson::array();
  for (const auto& c : m.instances) {
    ojson e;
    e["cell"] = c.cell;
    e["name"] = c.name;
    if (!c.variant.empty()) e["variant"] = c.variant;
    if (!c.ports.empty()) {
      ojson ports = ojson::object();
      for (const auto& p : c.ports) ports[p.name] = rails_json(p.rail1, p.rail0);
      e["ports"] = std::move(ports);
    }
    inst.push_back(std::move(e));
  }
  j["instances"] = std::move(inst);
  return j;
}

std::string serialize(const Netlist& nl) {
  std::ostringstream os;
  os << "{\n  \"protocol\": \"" << to_string(nl.protocol()) << "\",\n  \"gates\": [";
  const auto& gates = nl.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    os << (i ? ",\n    " : "\n    ") << gate_json(gates[i]).dump();
  }
  os << (gates.empty() ? "],\n" : "\n  ],\n");
  os << "  \"ports\": [";
  const auto ports = nl.ports();
  for (std::size_t i = 0; i < ports.size(); ++i) {
    os << (i ? ",\n    " : "\n    ") << port_json(ports[i]).dump();
  }
  os << (ports.empty() ? "],\n" : "\n  ],\n");
  os << "  \"ack_out\": " << nl.ack_out() << ",\n";
  os << "  \"ack_in\": " << nl.ack_in() << ",\n";
  std::string meta = meta_to_json(nl.meta()).dump(2);
  // indent nested lines to sit under the top-level object
  std::string indented;
  for (char c : meta) {
    indented += c;
    if (c == '\n') indented += "  ";
  }
  os << "  \"meta\": " << indented << "\n}\n";
  return os.str();
}

Netlist deserialize(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + e.what());
  }

  only_keys(doc, "", {"protocol", "gates", "ports", "ack_out", "ack_in", "meta"});
  const std::string proto_s = as_string(field(doc, "", "protocol"), "/protocol");
  const auto protocol = parse_protocol(proto_s);
  if (!protocol) fail("/protocol", "unknown protocol '" + proto_s + "'");

  std::vector<Gate> gates;
  const auto& gj = field(doc, "", "gates");
  if (!gj.is_array()) fail("/gates", "expected array");
  for (std::size_t i = 0; i < gj.size(); ++i) {
    const std::string p = "/gates/" + std::to_string(i);
    only_keys(gj[i], p, {"id", "kind", "inputs", "output", "reset"});
    Gate g;
    g.id = static_cast<GateId>(as_int(field(gj[i], p, "id"), p + "/id", 0));
    if (static_cast<std::size_t>(g.id) != i) fail(p + "/id", "gate ids must be dense and ordered");
    const std::string kind_s = as_string(field(gj[i], p, "kind"), p + "/kind");
    const auto kind = parse_gate_kind(kind_s);
    if (!kind) fail(p + "/kind", "unknown gate kind '" + kind_s + "'");
    g.kind = *kind;
    const auto& in = field(gj[i], p, "inputs");
    if (!in.is_array()) fail(p + "/inputs", "expected array");
    for (std::size_t s = 0; s < in.size(); ++s) {
      g.inputs.push_back(as_net(in[s], p + "/inputs/" + std::to_string(s), true));
    }
    g.output = as_net(field(gj[i], p, "output"), p + "/output", false);
    const auto reset = as_int(field(gj[i], p, "reset"), p + "/reset", 0);
    if (reset > 1) fail(p + "/reset", "expected 0 or 1");
    g.reset = static_cast<Level>(reset);
    gates.push_back(std::move(g));
  }

  std::vector<DualRailPort> ports;
  std::set<std::string> names;
  const auto& pj = field(doc, "", "ports");
  if (!pj.is_array()) fail("/ports", "expected array");
  for (std::size_t i = 0; i < pj.size(); ++i) {
    const std::string p = "/ports/" + std::to_string(i);
    only_keys(pj[i], p, {"name", "dir", "rail1", "rail0"});
    DualRailPort port;
    port.name = as_string(field(pj[i], p, "name"), p + "/name");
    if (!names.insert(port.name).second) fail(p + "/name", "duplicate port name");
    const std::string dir = as_string(field(pj[i], p, "dir"), p + "/dir");
    if (dir != "in" && dir != "out") fail(p + "/dir", "expected \"in\" or \"out\"");
    port.dir = dir == "in" ? PortDir::In : PortDir::Out;
    port.rail1 = as_net(field(pj[i], p, "rail1"), p + "/rail1", false);
    port.rail0 = as_net(field(pj[i], p, "rail0"), p + "/rail0", false);
    ports.push_back(std::move(port));
  }

  const NetId ack_out = as_net(field(doc, "", "ack_out"), "/ack_out", true);
  const NetId ack_in = as_net(field(doc, "", "ack_in"), "/ack_in", true);
  Metadata meta = parse_meta(field(doc, "", "meta"), "/meta");
  return Netlist(*protocol, std::move(gates), std::move(ports), ack_out, ack_in, std::move(meta));
}

Netlist load_netlist(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return deserialize(ss.str());
}

void save_netlist(const Netlist& nl, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << serialize(nl);
}

}  // namespace qdi
