#include "qdi/metrics.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <tuple>

#include "qdi/error.hpp"

namespace qdi {

using ojson = nlohmann::ordered_json;

AreaTable AreaTable::defaults() {
  return AreaTable({{GateKind::C2, 12},  {GateKind::C3, 16},  {GateKind::And2, 6},
                    {GateKind::And3, 8}, {GateKind::And4, 10}, {GateKind::Or2, 6},
                    {GateKind::Or3, 8},  {GateKind::Or4, 10}, {GateKind::Not, 2},
                    {GateKind::Buf, 4}});
}

AreaTable::AreaTable(std::map<GateKind, std::uint64_t> counts) {
  for (const auto& [k, v] : counts) set(k, v);
}

void AreaTable::set(GateKind k, std::uint64_t count) {
  if (count == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "area entry for " + std::string(to_string(k)) + " must be positive");
  }
  counts_[k] = count;
}

std::uint64_t AreaTable::at(GateKind k) const {
  const auto it = counts_.find(k);
  if (it == counts_.end()) {
    throw Error(ErrorCode::MissingAreaEntry, "no area entry for " + std::string(to_string(k)));
  }
  return it->second;
}

AreaTable AreaTable::load(const std::string& path, bool merge) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open area table '" + path + "'");
  ojson j;
  try {
    j = ojson::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, "area table '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "area table must be a JSON object");
  AreaTable t = merge ? defaults() : AreaTable{};
  for (const auto& [key, value] : j.items()) {
    const auto kind = parse_gate_kind(key);
    if (!kind) throw Error(ErrorCode::ParseError, "area table: unknown gate kind '" + key + "'");
    if (!value.is_number_unsigned()) {
      throw Error(ErrorCode::ParseError, "area table: " + key + " must be a positive integer");
    }
    t.set(*kind, value.get<std::uint64_t>());
  }
  return t;
}

ojson AreaTable::to_json() const {
  ojson j = ojson::object();
  for (const auto& [k, v] : counts_) j[std::string(to_string(k))] = v;
  return j;
}

AreaReport area(const Netlist& netlist, const AreaTable& table) {
  AreaReport r;
  for (const auto& g : netlist.gates()) {
    r.transistors += table.at(g.kind);
    ++r.census[g.kind];
  }
  return r;
}

double power_proxy(std::span<const CycleReport> reports) {
  if (reports.empty()) throw Error(ErrorCode::Empty, "no cycle reports");
  double sum = 0;
  for (const auto& r : reports) sum += static_cast<double>(r.transitions);
  return sum / static_cast<double>(reports.size());
}

std::vector<double> pctp_normalize(std::span<const double> pctp) {
  if (pctp.empty()) throw Error(ErrorCode::Empty, "empty PCTP group");
  const double ref = *std::max_element(pctp.begin(), pctp.end());
  if (!(ref > 0)) throw Error(ErrorCode::InvalidArgument, "PCTP group maximum must be positive");
  std::vector<double> out;
  out.reserve(pctp.size());
  for (double v : pctp) out.push_back(v == ref ? 1.0 : v / ref);
  return out;
}

MetricsReport make_report(const Netlist& netlist, std::span<const CycleReport> reports,
                          const std::string& delay_model, const AreaTable& table) {
  MetricsReport m;
  m.design = netlist.meta().name;
  const auto& params = netlist.meta().params;
  if (params.contains("n")) m.n = params["n"].get<int>();
  if (params.contains("fa")) m.fa_kind = params["fa"].get<std::string>();
  m.protocol = std::string(to_string(netlist.protocol()));
  m.delay_model = delay_model;
  m.latency = measure_latencies(reports);
  m.area = area(netlist, table);
  m.power_proxy = power_proxy(reports);
  m.pctp = m.power_proxy * m.latency.mean_cycle;
  return m;
}

Comparison compare(std::vector<MetricsReport> designs) {
  if (designs.empty()) throw Error(ErrorCode::Empty, "no designs to compare");
  const auto& first = designs.front();
  for (const auto& d : designs) {
    if (d.n != first.n || d.protocol != first.protocol || d.delay_model != first.delay_model) {
      throw Error(ErrorCode::GroupMismatch,
                  "cannot compare " + d.design + " (" + std::to_string(d.n) + ", " + d.protocol +
                      ", " + d.delay_model + ") with " + first.design + " (" +
                      std::to_string(first.n) + ", " + first.protocol + ", " + first.delay_model + ")");
    }
  }
  std::vector<double> pctp;
  for (const auto& d : designs) pctp.push_back(d.pctp);
  const auto norm = pctp_normalize(pctp);
  for (std::size_t i = 0; i < designs.size(); ++i) designs[i].pctp_normalized = norm[i];
  std::stable_sort(designs.begin(), designs.end(), [](const MetricsReport& a, const MetricsReport& b) {
    return std::tie(a.latency.mean_cycle, a.pctp, a.design) <
           std::tie(b.latency.mean_cycle, b.pctp, b.design);
  });
  Comparison c;
  c.n = first.n;
  c.protocol = first.protocol;
  c.winner = designs.front().design;
  c.rows = std::move(designs);
  return c;
}

std::vector<Comparison> compare_groups(std::vector<MetricsReport> designs) {
  // rtz sorts before rto
  std::map<std::tuple<int, bool, std::string>, std::vector<MetricsReport>> groups;
  for (auto& d : designs) groups[{d.n, d.protocol != "rtz", d.protocol}].push_back(std::move(d));
  std::vector<Comparison> out;
  for (auto& [key, members] : groups) out.push_back(compare(std::move(members)));
  return out;
}

namespace {

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

}  // namespace

void write_table(std::ostream& os, std::span<const Comparison> groups, const AreaTable& table,
                 bool calibrated) {
  const char* unit = calibrated ? "ns" : "units";
  os << "area table (transistors per gate):";
  for (const auto& [k, v] : table.entries()) os << ' ' << to_string(k) << '=' << v;
  os << '\n';
  if (!groups.empty() && !groups.front().rows.empty()) {
    os << "delay model: " << groups.front().rows.front().delay_model << '\n';
  }
  for (const auto& g : groups) {
    os << '\n' << g.n << 'x' << g.n << "  " << g.protocol << '\n';
    os << std::left << std::setw(22) << "design" << std::setw(8) << "fa" << std::right
       << std::setw(14) << (std::string("cycle(") + unit + ")") << std::setw(10) << "fwd"
       << std::setw(10) << "rev" << std::setw(13) << "transistors" << std::setw(8) << "gates"
       << std::setw(14) << "trans/cycle" << std::setw(12) << "PCTP(norm)" << '\n';
    for (const auto& r : g.rows) {
      std::size_t gates = 0;
      for (const auto& [k, n] : r.area.census) gates += n;
      os << std::left << std::setw(22) << (r.design + (r.design == g.winner ? " *" : ""))
         << std::setw(8) << r.fa_kind << std::right << std::setw(14) << fixed(r.latency.mean_cycle, 2)
         << std::setw(10) << fixed(r.latency.mean_forward, 2) << std::setw(10)
         << fixed(r.latency.mean_reverse, 2) << std::setw(13) << r.area.transistors << std::setw(8)
         << gates << std::setw(14) << fixed(r.power_proxy, 2) << std::setw(12)
         << fixed(r.pctp_normalized, 3) << '\n';
    }
  }
}

void write_metrics_csv(std::ostream& os, std::span<const Comparison> groups) {
  os << "n,protocol,design,fa,delay_model,cycles,mean_forward,mean_reverse,mean_cycle,"
        "transistors,power_proxy,pctp,pctp_normalized\n";
  for (const auto& g : groups) {
    for (const auto& r : g.rows) {
      os << r.n << ',' << r.protocol << ',' << r.design << ',' << r.fa_kind << ','
         << r.delay_model << ',' << r.latency.cycles << ',' << fixed(r.latency.mean_forward, 4)
         << ',' << fixed(r.latency.mean_reverse, 4) << ',' << fixed(r.latency.mean_cycle, 4) << ','
         << r.area.transistors << ',' << fixed(r.power_proxy, 4) << ',' << fixed(r.pctp, 4) << ','
         << fixed(r.pctp_normalized, 6) << '\n';
    }
  }
}

ojson to_json(const MetricsReport& r) {
  ojson j;
  j["design"] = r.design;
  j["n"] = r.n;
  j["fa"] = r.fa_kind;
  j["protocol"] = r.protocol;
  j["delay_model"] = r.delay_model;
  j["cycles"] = r.latency.cycles;
  j["forward"] = {{"min", r.latency.min_forward}, {"max", r.latency.max_forward},
                  {"mean", r.latency.mean_forward}};
  j["reverse"] = {{"min", r.latency.min_reverse}, {"max", r.latency.max_reverse},
                  {"mean", r.latency.mean_reverse}};
  j["cycle_time"] = {{"min", r.latency.min_cycle}, {"max", r.latency.max_cycle},
                     {"mean", r.latency.mean_cycle}};
  j["forward_equals_reverse"] = r.latency.forward_equals_reverse;
  ojson census = ojson::object();
  for (const auto& [k, n] : r.area.census) census[std::string(to_string(k))] = n;
  j["area"] = {{"transistors", r.area.transistors}, {"census", census}};
  j["power_proxy"] = r.power_proxy;
  j["pctp"] = r.pctp;
  j["pctp_normalized"] = r.pctp_normalized;
  return j;
}

ojson to_json(std::span<const Comparison> groups) {
  ojson arr = ojson::array();
  for (const auto& g : groups) {
    ojson rows = ojson::array();
    for (const auto& r : g.rows) rows.push_back(to_json(r));
    arr.push_back({{"n", g.n}, {"protocol", g.protocol}, {"winner", g.winner}, {"designs", rows}});
  }
  return arr;
}

}  // namespace qdi
