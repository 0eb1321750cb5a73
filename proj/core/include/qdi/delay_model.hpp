#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "qdi/netlist.hpp"

namespace qdi {

using Time = std::uint64_t;

enum class DelayMode : std::uint8_t { Unit, FixedTable, RandomPerGate };

/// Per-gate transport delays in abstract time units. All delays are > 0.
class DelayModel {
 public:
  static constexpr Time kDefaultRandomLo = 1;
  static constexpr Time kDefaultRandomHi = 20;

  static DelayModel unit();
  /// Every kind used by a simulated netlist must appear in the table.
  static DelayModel table(std::map<GateKind, Time> delays, bool calibrated_ns = false);
  /// Delay of gate g is drawn uniformly from [lo, hi] by a generator seeded
  /// with (seed, g), so it does not depend on evaluation order.
  static DelayModel random(std::uint64_t seed, Time lo = kDefaultRandomLo,
                           Time hi = kDefaultRandomHi);

  /// Parses "unit", "random:<lo>,<hi>" or "table:<path>"; `seed` feeds random.
  static DelayModel parse(std::string_view text, std::uint64_t seed);
  /// Table files are JSON objects mapping kind names to delays, optionally
  /// with "unit": "ns" to declare the table calibrated.
  static DelayModel load_table(const std::string& path);
  /// Inverse of to_json().
  static DelayModel from_json(const nlohmann::ordered_json& j);

  /// Fixed delay for one gate instance, taking precedence over the mode.
  DelayModel& override_gate(GateId gate, Time delay);

  Time delay(const Gate& gate) const;
  Time max_delay(const Netlist& netlist) const;

  DelayMode mode() const { return mode_; }
  std::uint64_t seed() const { return seed_; }
  bool calibrated() const { return calibrated_; }
  /// "unit", "random:1,20@7", "table:{...}"
  std::string describe() const;
  nlohmann::ordered_json to_json() const;

 private:
  DelayMode mode_ = DelayMode::Unit;
  std::map<GateKind, Time> table_;
  std::map<GateId, Time> overrides_;
  std::uint64_t seed_ = 0;
  Time lo_ = 1;
  Time hi_ = 1;
  bool calibrated_ = false;
};

}  // namespace qdi
