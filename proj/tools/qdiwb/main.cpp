// qdiwb: generate, simulate, verify and benchmark dual-rail array multipliers.

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "qdi/error.hpp"

using namespace qdiwb;

namespace {

void add_design_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--netlist", cfg.netlist, "Netlist file (instead of generator flags)");
  sub->add_option("--n", cfg.n, "Operand width")->check(CLI::Range(2, qdi::kMaxOperandWidth));
  sub->add_option("--fa", cfg.fa, "Full adder kind")->check(CLI::IsMember({"dims", "weak"}));
  sub->add_option("--protocol", cfg.protocol, "Handshake protocol")->check(CLI::IsMember({"rtz", "rto"}));
  sub->add_flag("--c3-tree", cfg.c3_tree, "Emit C3 as two C2");
  sub->add_flag("--or4-tree", cfg.or4_tree, "Emit OR4 as three OR2");
  sub->add_option("--mutate-swap-fa", cfg.mutate_swap_fa,
                  "Swap sum and carry consumers of the named full adder (e.g. fa_r1_c0)");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Dual-rail indicating multiplier workbench"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.set_config("--config", "", "Read flags from a TOML/INI file");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--seed", cfg.seed, "Seed for random operands and delays");
  app.add_option("--delay-model", cfg.delay_model, "unit | random:<lo>,<hi> | table:<path>");
  app.add_option("--out", cfg.out, "Output directory");
  app.add_flag("--json", cfg.json, "Machine-readable stdout");

  auto* gen = app.add_subcommand("gen", "Generate a multiplier netlist");
  add_design_options(gen, cfg);

  auto* sim = app.add_subcommand("sim", "Run handshake cycles and record latencies");
  add_design_options(sim, cfg);
  sim->add_option("--coverage", cfg.coverage, "exhaustive | random:<count>");
  sim->add_flag("--eager", cfg.eager, "Apply the next half as soon as Ackin flips");
  sim->add_flag("--vcd", cfg.vcd, "Also write the full trace as VCD and CSV");

  auto* verify = app.add_subcommand("verify", "Run property checks");
  add_design_options(verify, cfg);
  verify->add_option("--coverage", cfg.coverage, "exhaustive | random:<count>");
  verify->add_option("--checks", cfg.checks, "Subset of checks to run")->delimiter(',');
  verify->add_option("--di-seeds", cfg.di_seeds, "Random delay assignments");
  verify->add_option("--di-pairs", cfg.di_pairs, "Operand pairs per delay assignment");
  verify->add_option("--weak-orders", cfg.weak_orders, "Sampled arrival orders");

  auto* bench = app.add_subcommand("bench", "Compare designs");
  bench->add_option("--sizes", cfg.sizes, "Operand widths")->delimiter(',')->check(
      CLI::Range(2, qdi::kMaxOperandWidth));
  bench->add_option("--fa", cfg.fas, "Full adder kinds")->delimiter(',')->check(
      CLI::IsMember({"dims", "weak"}));
  bench->add_option("--protocols", cfg.protocols, "Protocols")->delimiter(',')->check(
      CLI::IsMember({"rtz", "rto"}));
  bench->add_option("--pairs", cfg.pairs, "Random operand pairs (0: exhaustive up to n=4, else 10000)");
  bench->add_option("--area-table", cfg.area_table, "JSON transistor counts per gate kind");
  bench->add_flag("--c3-tree", cfg.c3_tree, "Emit C3 as two C2");
  bench->add_flag("--or4-tree", cfg.or4_tree, "Emit OR4 as three OR2");
  bench->add_option("--format", cfg.format, "Stdout format")->check(CLI::IsMember({"table", "csv"}));

  auto* report = app.add_subcommand("report", "Render a saved bench result");
  report->add_option("--in", cfg.in, "bench JSON file")->required();
  report->add_option("--area-table", cfg.area_table, "Override the area table");
  report->add_option("--format", cfg.format, "table | csv | json")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen) {
      cfg.command = "gen";
      return cmd_gen(cfg);
    }
    if (*sim) {
      cfg.command = "sim";
      return cmd_sim(cfg);
    }
    if (*verify) {
      cfg.command = "verify";
      return cmd_verify(cfg);
    }
    if (*bench) {
      cfg.command = "bench";
      return cmd_bench(cfg);
    }
    if (*report) {
      cfg.command = "report";
      return cmd_report(cfg);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const qdi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case qdi::ErrorCode::ParseError:
      case qdi::ErrorCode::InvalidArgument:
      case qdi::ErrorCode::InvalidNetlist:
      case qdi::ErrorCode::MissingAreaEntry:
      case qdi::ErrorCode::NotAGeneratedMultiplier:
        return kUsage;
      default:
        return kFailure;
    }
  }
  return kUsage;
}
