#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "qdi/controls.hpp"
#include "qdi/error.hpp"
#include "qdi/metrics.hpp"
#include "qdi/serialize.hpp"
#include "qdi/trace_export.hpp"

namespace qdiwb {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

fs::path out_path(const RunConfig& cfg, const std::string& file) {
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) throw UsageError("cannot create output directory '" + cfg.out + "': " + ec.message());
  return fs::path(cfg.out) / file;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw UsageError("cannot write '" + path.string() + "'");
  os << text;
  if (!os) throw UsageError("write failed for '" + path.string() + "'");
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

qdi::Netlist load_design(const RunConfig& cfg) {
  qdi::Netlist nl;
  if (!cfg.netlist.empty()) {
    if (!fs::exists(cfg.netlist)) throw UsageError("netlist file '" + cfg.netlist + "' not found");
    nl = qdi::load_netlist(cfg.netlist);
  } else {
    nl = qdi::generate(cfg.spec());
  }
  if (!cfg.mutate_swap_fa.empty()) nl = qdi::swap_adder_outputs(nl, cfg.mutate_swap_fa);
  return nl;
}

std::string design_file_name(const qdi::Netlist& nl) {
  return nl.meta().name + "_" + std::string(qdi::to_string(nl.protocol()));
}

bool has_operands(const qdi::Netlist& nl) {
  try {
    qdi::operand_width(nl);
    return nl.ack_out() != qdi::kNoNet;
  } catch (const qdi::Error&) {
    return false;
  }
}

ojson stats_json(const qdi::StructureStats& s) {
  return ojson{{"and_cells", s.and_cells},           {"full_adders", s.full_adders},
               {"constant_carries", s.constant_carries}, {"c_element_count", s.c_element_count},
               {"gate_count", s.gate_count},          {"product_width", s.product_width}};
}

ojson summary_json(const qdi::LatencySummary& s) {
  return ojson{{"cycles", s.cycles},
               {"forward", {{"min", s.min_forward}, {"max", s.max_forward}, {"mean", s.mean_forward}}},
               {"reverse", {{"min", s.min_reverse}, {"max", s.max_reverse}, {"mean", s.mean_reverse}}},
               {"cycle_time", {{"min", s.min_cycle}, {"max", s.max_cycle}, {"mean", s.mean_cycle}}},
               {"forward_equals_reverse", s.forward_equals_reverse}};
}

qdi::AreaTable area_table(const RunConfig& cfg) {
  if (cfg.area_table.empty()) return qdi::AreaTable::defaults();
  if (!fs::exists(cfg.area_table)) throw UsageError("area table '" + cfg.area_table + "' not found");
  return qdi::AreaTable::load(cfg.area_table);
}

}  // namespace

int cmd_gen(const RunConfig& cfg) {
  qdi::Netlist nl = load_design(cfg);
  {
    // Re-wrap with the run provenance recorded next to the generator params.
    qdi::Metadata meta = nl.meta();
    meta.params["provenance"] = cfg.provenance();
    nl = qdi::Netlist(nl.protocol(), nl.gates(), nl.ports(), nl.ack_out(), nl.ack_in(), meta);
  }
  const auto path = out_path(cfg, design_file_name(nl) + ".json");
  write_file(path, qdi::serialize(nl));
  const auto stats = qdi::structure_stats(nl);
  if (cfg.json) {
    std::cout << dump(ojson{{"netlist", path.string()}, {"stats", stats_json(stats)}});
  } else {
    std::cout << "wrote " << path.string() << "\n"
              << "and_cells " << stats.and_cells << "\n"
              << "full_adders " << stats.full_adders << "\n"
              << "constant_carries " << stats.constant_carries << "\n"
              << "c_elements " << stats.c_element_count << "\n"
              << "gates " << stats.gate_count << "\n"
              << "product_width " << stats.product_width << "\n";
  }
  return kPass;
}

int cmd_sim(const RunConfig& cfg) {
  const qdi::Netlist nl = load_design(cfg);
  const auto ops = cfg.operand_coverage().operands(qdi::operand_width(nl));
  const auto delays = cfg.delays();
  qdi::HarnessOptions opts;
  opts.eager_environment = cfg.eager;
  opts.retain_trace = cfg.vcd;
  qdi::Harness h(nl, delays, opts);
  std::vector<qdi::CycleReport> reports;
  try {
    reports = h.run_sequence(ops);
  } catch (const qdi::Error& e) {
    std::cerr << "simulation failed: " << e.what() << "\n";
    return kFailure;
  }
  const std::string stem = design_file_name(nl);

  std::ostringstream csv;
  csv << "# " << cfg.provenance_line() << "\n";
  qdi::write_cycles_csv(csv, reports);
  write_file(out_path(cfg, stem + ".cycles.csv"), csv.str());

  ojson doc = cfg.provenance();
  doc["design"] = nl.meta().name;
  doc["protocol"] = std::string(qdi::to_string(nl.protocol()));
  doc["delay_model"] = delays.to_json();
  doc["summary"] = reports.empty() ? ojson(nullptr) : summary_json(qdi::measure_latencies(reports));
  doc["cycles"] = qdi::cycles_to_json(reports);
  write_file(out_path(cfg, stem + ".sim.json"), dump(doc));

  if (cfg.vcd) {
    std::ostringstream vcd;
    vcd << "$comment " << cfg.provenance_line() << " $end\n";
    qdi::write_vcd(vcd, nl, h.sim().trace(), delays.calibrated() ? "1ns" : "1s");
    write_file(out_path(cfg, stem + ".vcd"), vcd.str());
    std::ostringstream tr;
    tr << "# " << cfg.provenance_line() << "\n";
    qdi::write_trace_csv(tr, h.sim().trace());
    write_file(out_path(cfg, stem + ".trace.csv"), tr.str());
  }

  if (cfg.json) {
    std::cout << dump(doc["summary"]);
  } else if (!reports.empty()) {
    const auto s = qdi::measure_latencies(reports);
    const char* unit = delays.calibrated() ? " ns" : " units";
    std::cout << s.cycles << " cycles, delay model " << delays.describe() << "\n"
              << "forward mean " << s.mean_forward << unit << " (" << s.min_forward << ".."
              << s.max_forward << ")\n"
              << "reverse mean " << s.mean_reverse << unit << " (" << s.min_reverse << ".."
              << s.max_reverse << ")\n"
              << "cycle mean " << s.mean_cycle << unit << "\n"
              << "forward == reverse on every cycle: " << (s.forward_equals_reverse ? "yes" : "no")
              << "\n";
  }
  return kPass;
}

int cmd_verify(const RunConfig& cfg) {
  const qdi::Netlist nl = load_design(cfg);
  const auto delays = cfg.delays();
  const bool multiplier = has_operands(nl);

  std::vector<std::string> checks = cfg.checks;
  if (checks.empty()) {
    if (multiplier) {
      checks = {"functional", "protocol", "monotonicity", "weak_indication", "delay_insensitivity",
                "duality"};
    } else {
      checks = {"weak_indication", "cell_monotonicity", "duality"};
    }
  }
  static const std::vector<std::string> kKnown = {
      "functional",      "protocol",          "monotonicity",        "weak_indication",
      "strong_indication", "cell_monotonicity", "delay_insensitivity", "duality"};
  for (const auto& c : checks) {
    if (std::find(kKnown.begin(), kKnown.end(), c) == kKnown.end()) {
      throw UsageError("unknown check '" + c + "'");
    }
    const bool needs_operands =
        c == "functional" || c == "protocol" || c == "monotonicity" || c == "delay_insensitivity";
    if (needs_operands && !multiplier) throw UsageError("check '" + c + "' needs a multiplier netlist");
  }
  auto wants = [&](const char* name) {
    return std::find(checks.begin(), checks.end(), name) != checks.end();
  };

  std::vector<qdi::CheckOutcome> outcomes;
  if (wants("functional") || wants("protocol") || wants("monotonicity")) {
    const auto ops = cfg.operand_coverage().operands(qdi::operand_width(nl));
    auto w = qdi::run_workload(nl, ops, delays);
    for (auto* o : {&w.functional, &w.protocol, &w.monotonicity}) {
      if (wants(o->name.c_str())) outcomes.push_back(std::move(*o));
    }
  }
  if (wants("weak_indication")) {
    qdi::WeakIndicationOptions o;
    o.sampled_orders = cfg.weak_orders;
    o.seed = cfg.seed;
    outcomes.push_back(qdi::check_weak_indication(nl, o, delays));
  }
  if (wants("strong_indication")) outcomes.push_back(qdi::check_strong_indication(nl, delays));
  if (wants("cell_monotonicity")) outcomes.push_back(qdi::check_cell_monotonicity(nl, delays));
  if (wants("delay_insensitivity")) {
    const auto ops = qdi::Coverage::random(cfg.di_pairs, cfg.seed).operands(qdi::operand_width(nl));
    qdi::DelayInsensitivityOptions o;
    o.base_seed = cfg.seed;
    outcomes.push_back(qdi::check_delay_insensitivity(nl, cfg.di_seeds, ops, o));
  }
  if (wants("duality")) {
    const qdi::Netlist rtz = nl.protocol() == qdi::Protocol::Rtz ? nl : qdi::dualize(nl);
    const auto cov = multiplier ? cfg.operand_coverage() : qdi::Coverage::all();
    outcomes.push_back(qdi::check_rtz_rto_duality(rtz, cov));
  }

  bool all = true;
  ojson doc = cfg.provenance();
  doc["design"] = nl.meta().name;
  doc["protocol"] = std::string(qdi::to_string(nl.protocol()));
  doc["delay_model"] = delays.to_json();
  ojson arr = ojson::array();
  const std::string stem = design_file_name(nl);
  for (const auto& o : outcomes) {
    ojson j = qdi::to_json(o, false);
    if (!o.passed) {
      all = false;
      const auto path = out_path(cfg, stem + ".counterexample." + o.name + ".json");
      ojson cx = cfg.provenance();
      cx["design"] = nl.meta().name;
      cx["outcome"] = qdi::to_json(o, true);
      write_file(path, dump(cx));
      j["counterexample_file"] = path.string();
    }
    if (!cfg.json) {
      std::cout << (o.passed ? "PASS " : "FAIL ") << o.name << ": " << o.summary;
      if (!o.passed) std::cout << " (counterexample: " << j["counterexample_file"].get<std::string>() << ")";
      std::cout << "\n";
    }
    arr.push_back(std::move(j));
  }
  doc["outcomes"] = std::move(arr);
  doc["passed"] = all;
  write_file(out_path(cfg, stem + ".verify.json"), dump(doc));
  if (cfg.json) std::cout << dump(doc);
  return all ? kPass : kFailure;
}

namespace {

struct BenchItem {
  qdi::MultiplierSpec spec;
  std::optional<qdi::MetricsReport> report;
  std::string error;
};

void emit_bench(const RunConfig& cfg, const ojson& doc, const std::vector<qdi::Comparison>& groups,
                const qdi::AreaTable& table, bool calibrated, const std::string& stem) {
  std::ostringstream txt;
  txt << "# " << cfg.provenance_line() << "\n";
  qdi::write_table(txt, groups, table, calibrated);
  std::ostringstream csv;
  csv << "# " << cfg.provenance_line() << "\n";
  qdi::write_metrics_csv(csv, groups);
  write_file(out_path(cfg, stem + ".txt"), txt.str());
  write_file(out_path(cfg, stem + ".csv"), csv.str());
  write_file(out_path(cfg, stem + ".json"), dump(doc));
  if (cfg.json) {
    std::cout << dump(doc);
  } else if (cfg.format == "csv") {
    qdi::write_metrics_csv(std::cout, groups);
  } else {
    qdi::write_table(std::cout, groups, table, calibrated);
  }
}

qdi::MetricsReport report_from_json(const ojson& j) {
  qdi::MetricsReport r;
  r.design = j.at("design").get<std::string>();
  r.n = j.at("n").get<int>();
  r.fa_kind = j.at("fa").get<std::string>();
  r.protocol = j.at("protocol").get<std::string>();
  r.delay_model = j.at("delay_model").get<std::string>();
  auto& L = r.latency;
  L.cycles = j.at("cycles").get<std::size_t>();
  const auto& f = j.at("forward");
  L.min_forward = f.at("min").get<qdi::Time>();
  L.max_forward = f.at("max").get<qdi::Time>();
  L.mean_forward = f.at("mean").get<double>();
  const auto& rv = j.at("reverse");
  L.min_reverse = rv.at("min").get<qdi::Time>();
  L.max_reverse = rv.at("max").get<qdi::Time>();
  L.mean_reverse = rv.at("mean").get<double>();
  const auto& c = j.at("cycle_time");
  L.min_cycle = c.at("min").get<qdi::Time>();
  L.max_cycle = c.at("max").get<qdi::Time>();
  L.mean_cycle = c.at("mean").get<double>();
  L.forward_equals_reverse = j.at("forward_equals_reverse").get<bool>();
  r.area.transistors = j.at("area").at("transistors").get<std::uint64_t>();
  for (const auto& [k, v] : j.at("area").at("census").items()) {
    const auto kind = qdi::parse_gate_kind(k);
    if (!kind) throw qdi::Error(qdi::ErrorCode::ParseError, "unknown gate kind '" + k + "'");
    r.area.census[*kind] = v.get<std::size_t>();
  }
  r.power_proxy = j.at("power_proxy").get<double>();
  r.pctp = j.at("pctp").get<double>();
  return r;
}

}  // namespace

int cmd_bench(const RunConfig& cfg) {
  const auto table = area_table(cfg);
  const auto delays = cfg.delays();
  std::vector<BenchItem> items;
  for (int n : cfg.sizes) {
    for (const auto& p : cfg.protocols) {
      for (const auto& fa : cfg.fas) {
        RunConfig one = cfg;
        one.n = n;
        one.fa = fa;
        one.protocol = p;
        items.push_back({one.spec(), std::nullopt, {}});
      }
    }
  }

  // Designs are independent; results land in their own slot so output order
  // does not depend on scheduling.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      auto& it = items[i];
      try {
        const auto nl = qdi::generate(it.spec);
        const auto cov = cfg.pairs == 0 && it.spec.n <= 4
                             ? qdi::Coverage::all()
                             : qdi::Coverage::random(cfg.pairs ? cfg.pairs : 10000, cfg.seed);
        const auto ops = cov.operands(it.spec.n);
        auto w = qdi::run_workload(nl, ops, delays);
        if (!w.passed()) {
          for (const auto* o : {&w.functional, &w.protocol, &w.monotonicity}) {
            if (!o->passed) {
              it.error = o->name + ": " + o->summary;
              break;
            }
          }
          continue;
        }
        it.report = qdi::make_report(nl, w.reports, delays.describe(), table);
      } catch (const std::exception& e) {
        it.error = e.what();
      }
    }
  };
  const unsigned n_workers = std::max(1U, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                             static_cast<unsigned>(items.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::vector<qdi::MetricsReport> ok;
  ojson failures = ojson::array();
  for (auto& it : items) {
    if (it.report) {
      ok.push_back(std::move(*it.report));
    } else {
      const std::string name = "mult" + std::to_string(it.spec.n) + "x" + std::to_string(it.spec.n) +
                               "_" + std::string(qdi::to_string(it.spec.fa_kind)) + "_" +
                               std::string(qdi::to_string(it.spec.protocol));
      failures.push_back({{"design", name}, {"error", it.error}});
      std::cerr << "design " << name << " failed: " << it.error << "\n";
    }
  }
  const auto groups = qdi::compare_groups(std::move(ok));
  ojson doc = cfg.provenance();
  doc["area_table"] = table.to_json();
  doc["delay_model"] = delays.to_json();
  doc["calibrated"] = delays.calibrated();
  doc["groups"] = qdi::to_json(groups);
  doc["failures"] = failures;
  emit_bench(cfg, doc, groups, table, delays.calibrated(), "bench");
  return failures.empty() ? kPass : kFailure;
}

int cmd_report(const RunConfig& cfg) {
  if (cfg.in.empty()) throw UsageError("report needs --in <bench.json>");
  std::ifstream is(cfg.in);
  if (!is) throw UsageError("cannot open '" + cfg.in + "'");
  ojson j;
  try {
    j = ojson::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw qdi::Error(qdi::ErrorCode::ParseError, cfg.in + ": " + e.what());
  }
  std::vector<qdi::MetricsReport> designs;
  try {
    for (const auto& g : j.at("groups")) {
      for (const auto& d : g.at("designs")) designs.push_back(report_from_json(d));
    }
  } catch (const nlohmann::json::exception& e) {
    throw qdi::Error(qdi::ErrorCode::ParseError, cfg.in + ": " + e.what());
  }
  qdi::AreaTable table = qdi::AreaTable::defaults();
  if (!cfg.area_table.empty()) {
    table = area_table(cfg);
  } else if (j.contains("area_table")) {
    std::map<qdi::GateKind, std::uint64_t> m;
    for (const auto& [k, v] : j["area_table"].items()) {
      if (const auto kind = qdi::parse_gate_kind(k)) m[*kind] = v.get<std::uint64_t>();
    }
    table = qdi::AreaTable(m);
  }
  const bool calibrated = j.value("calibrated", false);
  const auto groups = qdi::compare_groups(std::move(designs));
  if (cfg.format != "table" && cfg.format != "csv" && cfg.format != "json") {
    throw UsageError("format must be table, csv or json");
  }
  ojson doc = cfg.provenance();
  doc["source"] = j.contains("config") ? j["config"] : ojson(nullptr);
  doc["area_table"] = table.to_json();
  doc["calibrated"] = calibrated;
  doc["groups"] = qdi::to_json(groups);
  if (cfg.format == "json" || cfg.json) {
    std::cout << dump(doc);
  } else if (cfg.format == "csv") {
    qdi::write_metrics_csv(std::cout, groups);
  } else {
    qdi::write_table(std::cout, groups, table, calibrated);
  }
  return kPass;
}

}  // namespace qdiwb
