#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdi/harness.hpp"

namespace qdi {

/// Everything needed to reproduce a failure: rerun the named stimulus under
/// the named delay model and the same trace comes out.
struct Counterexample {
  std::uint64_t seed = 0;
  nlohmann::ordered_json delay_model;
  nlohmann::ordered_json stimulus;
  std::string detail;
  Trace trace;  // offending slice
};

struct CheckOutcome {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string summary;
  std::optional<Counterexample> counterexample;
};

nlohmann::ordered_json to_json(const CheckOutcome& outcome, bool include_trace = true);

using Oracle = std::function<std::uint64_t(std::uint64_t a, std::uint64_t b)>;

/// Plain integer product; independent of any netlist.
inline std::uint64_t multiply_oracle(std::uint64_t a, std::uint64_t b) { return a * b; }

struct Coverage {
  bool exhaustive = true;
  std::size_t random_pairs = 0;
  std::uint64_t seed = 1;

  static Coverage all() { return {}; }
  static Coverage random(std::size_t pairs, std::uint64_t seed) { return {false, pairs, seed}; }

  /// Operand pairs for `width`-bit operands; exhaustive order is a-major.
  std::vector<Operands> operands(int width) const;
};

/// Operand width of a netlist whose inputs are a<j>/b<i> ports.
int operand_width(const Netlist& netlist);

struct WorkloadResult {
  CheckOutcome functional;
  CheckOutcome protocol;
  CheckOutcome monotonicity;
  std::vector<CycleReport> reports;

  bool passed() const { return functional.passed && protocol.passed && monotonicity.passed; }
};

/// Runs `ops` through full handshakes, checking decoded products against the
/// oracle, port conformance (no ILLEGAL, one data and one spacer per cycle,
/// no output events past completion) and per-half monotonicity.
WorkloadResult run_workload(const Netlist& netlist, std::span<const Operands> ops,
                            const DelayModel& delays, const Oracle& oracle = multiply_oracle,
                            HarnessOptions opts = {});

CheckOutcome check_functional(const Netlist& netlist, const Oracle& oracle,
                              const Coverage& coverage, const DelayModel& delays = DelayModel::unit(),
                              HarnessOptions opts = {});

/// Settle interval used while inputs are withheld: 50x the largest gate delay.
Time withheld_settle_time(const Netlist& netlist, const DelayModel& delays);

/// Every codeword x every arrival order of the input ports, one port at a
/// time with a settle interval in between: no output rail may move before
/// the last port arrives, in the data half and the spacer half.
CheckOutcome check_strong_indication(const Netlist& cell,
                                     const DelayModel& delays = DelayModel::unit());

struct WeakIndicationOptions {
  /// Above this many inputs, sample instead of enumerating.
  std::size_t exhaustive_limit = 3;
  std::size_t sampled_orders = 200;
  std::uint64_t seed = 1;
};

/// Staggered arrival: while any input is withheld at least one output must
/// stay incomplete, and once all arrive every output completes. Checked for
/// data and spacer halves. The phase line of constant sources counts as an
/// input.
CheckOutcome check_weak_indication(const Netlist& circuit,
                                   const WeakIndicationOptions& opts = {},
                                   const DelayModel& delays = DelayModel::unit());

/// `boundaries` are trace indices at which a new half-cycle starts. Within a
/// half, every net may change at most once and every AND/OR combiner may see
/// at most one of its inputs change.
CheckOutcome check_monotonicity(const Netlist& netlist, const Trace& trace,
                                std::span<const std::size_t> boundaries);

/// Monotonicity over every input codeword of a cell without handshake: data
/// applied to all inputs at once, run to quiescence, then spacer.
CheckOutcome check_cell_monotonicity(const Netlist& cell,
                                     const DelayModel& delays = DelayModel::unit());

struct DelayInsensitivityOptions {
  std::uint64_t base_seed = 1;
  Time lo = DelayModel::kDefaultRandomLo;
  Time hi = DelayModel::kDefaultRandomHi;
  bool eager_environment = true;
  std::map<GateId, Time> overrides;
  unsigned workers = 0;  // 0 = hardware concurrency
};

/// Runs `ops` under `n_seeds` random per-gate delay assignments and compares
/// every decoded product with a unit-delay reference run. Products, protocol
/// conformance and monotonicity must hold for every seed.
CheckOutcome check_delay_insensitivity(const Netlist& netlist, std::size_t n_seeds,
                                       std::span<const Operands> ops,
                                       const DelayInsensitivityOptions& opts = {});

/// Decoded outputs of `rtz` and of dualize(rtz) under RTO handshaking must
/// agree on every operand pair of `coverage` (exhaustive input codewords for
/// cells without a completion detector), and gate counts must match.
CheckOutcome check_rtz_rto_duality(const Netlist& rtz, const Coverage& coverage = Coverage::all());

/// Re-executes the counterexample of a failed outcome from its recorded
/// stimulus and delay model and returns the offending trace slice; a faithful
/// replay returns exactly `outcome.counterexample->trace`. Workload-based
/// outcomes (functional, protocol, monotonicity, delay_insensitivity) are
/// checked against `oracle`; delay_insensitivity rebuilds its unit-delay
/// reference instead.
Trace replay_counterexample(const Netlist& netlist, const CheckOutcome& outcome,
                           const Oracle& oracle = multiply_oracle);

/// Applies one data codeword to a cell's inputs (and the phase line), runs to
/// quiescence, records decoded outputs, then returns the cell to spacer.
std::vector<DualRailValue> evaluate_cell(Simulator& sim, const std::vector<bool>& bits);

}  // namespace qdi
