#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <vector>

#include "qdi/simulator.hpp"

namespace qdi {

/// The four handshake steps of one transaction, in the order the environment
/// walks through them. Step1 is the idle state: spacer on the bus and Ackin at
/// its rest level.
enum class Phase : std::uint8_t { Step1Idle, Step2DataAcknowledged, Step3SpacerApplied, Step4Released };

std::string_view to_string(Phase p);

/// Enforces the step order; a skipped or repeated step throws.
class PhaseState {
 public:
  Phase current() const { return phase_; }
  void advance(Phase next);

 private:
  Phase phase_ = Phase::Step1Idle;
};

struct Operands {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  bool operator==(const Operands&) const = default;
};

struct CycleReport {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t product = 0;
  Time forward_latency = 0;
  Time reverse_latency = 0;
  Time cycle_time = 0;
  std::uint64_t transitions = 0;
  /// Ports whose decoded value did not go spacer -> data -> spacer exactly once.
  std::size_t protocol_violations = 0;
  /// Output rail events after the completion detector fired in the same half.
  std::size_t late_output_events = 0;
  bool returned_to_rest = true;

  bool forward_equals_reverse() const { return forward_latency == reverse_latency; }
};

/// Events of one cycle with the instants the environment switched halves.
struct CycleCapture {
  Trace events;
  Time data_start = 0;
  Time spacer_start = 0;
  Time end = 0;
  /// Index into `events` of the first spacer-half event.
  std::size_t spacer_index = 0;
};

struct HarnessOptions {
  /// Apply the next half the instant Ackin flips instead of waiting for the
  /// circuit to go quiescent. Exposes transitions still in flight at
  /// completion (orphans, fork races).
  bool eager_environment = false;
  Time guard = kDefaultGuard;
  /// Keep the whole trace in the simulator across cycles.
  bool retain_trace = false;
};

/// Drives full 4-phase transactions against one circuit stage. The harness
/// owns the Ackout -> Ackin inverter (zero delay) and the phase line feeding
/// constant sources.
class Harness {
 public:
  Harness(const Netlist& netlist, DelayModel delays, HarnessOptions opts = {});
  Harness(Netlist&&, DelayModel, HarnessOptions = {}) = delete;

  Simulator& sim() { return sim_; }
  const Simulator& sim() const { return sim_; }
  const Netlist& netlist() const { return sim_.netlist(); }
  Phase phase() const { return phase_.current(); }

  /// Maps operands onto ports named a<j> / b<i>; other input names throw.
  std::vector<bool> operand_bits(Operands ops) const;

  /// One data + spacer transaction. Throws Error(NonQuiescent | IllegalOutput
  /// | StuckPhase).
  CycleReport run_cycle(Operands ops, CycleCapture* capture = nullptr);
  /// Same, with one bit per input port in port order; report.a packs them.
  CycleReport run_bits(const std::vector<bool>& bits, CycleCapture* capture = nullptr);

  using CycleHook = std::function<void(std::size_t index, const CycleReport&, const CycleCapture&)>;
  /// Errors are rethrown with the failing cycle index in the message.
  std::vector<CycleReport> run_sequence(std::span<const Operands> ops, const CycleHook& hook = {});

  /// Lets stragglers (eager mode) finish; returns elapsed time.
  Time drain() { return sim_.run_until_quiescent(opts_.guard); }

 private:
  struct HalfResult {
    Time latency = 0;
    std::size_t violations = 0;
    std::size_t late = 0;
  };
  HalfResult run_half(bool data_half, const std::vector<bool>& bits);

  Simulator sim_;
  HarnessOptions opts_;
  PhaseState phase_;
  std::vector<int> rail_port_;  // net -> index into ports_, -1 otherwise
  std::vector<DualRailPort> ports_;
};

struct LatencySummary {
  std::size_t cycles = 0;
  Time min_forward = 0, max_forward = 0;
  Time min_reverse = 0, max_reverse = 0;
  Time min_cycle = 0, max_cycle = 0;
  double mean_forward = 0, mean_reverse = 0, mean_cycle = 0;
  bool forward_equals_reverse = true;  // held on every cycle
};

/// Throws Error(Empty) for no reports.
LatencySummary measure_latencies(std::span<const CycleReport> reports);

void write_cycles_csv(std::ostream& os, std::span<const CycleReport> reports);
nlohmann::ordered_json cycles_to_json(std::span<const CycleReport> reports);

}  // namespace qdi
