#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qdi/harness.hpp"

namespace qdi {

/// Transistor count per gate kind. The defaults other than C2 are textbook
/// static-CMOS figures and are configuration, not measurements.
class AreaTable {
 public:
  static AreaTable defaults();
  /// JSON object mapping kind names to positive counts; merged over defaults
  /// when `merge` is set.
  static AreaTable load(const std::string& path, bool merge = true);

  AreaTable() = default;
  explicit AreaTable(std::map<GateKind, std::uint64_t> counts);

  /// Throws Error(MissingAreaEntry) when `k` has no entry.
  std::uint64_t at(GateKind k) const;
  void set(GateKind k, std::uint64_t count);
  const std::map<GateKind, std::uint64_t>& entries() const { return counts_; }
  nlohmann::ordered_json to_json() const;

 private:
  std::map<GateKind, std::uint64_t> counts_;
};

struct AreaReport {
  std::uint64_t transistors = 0;
  std::map<GateKind, std::size_t> census;
};

AreaReport area(const Netlist& netlist, const AreaTable& table = AreaTable::defaults());

/// Mean transitions per cycle. Throws Error(Empty).
double power_proxy(std::span<const CycleReport> reports);

/// Each value divided by the group maximum. Throws Error(Empty) for an empty
/// group and Error(InvalidArgument) for a non-positive maximum.
std::vector<double> pctp_normalize(std::span<const double> pctp);

struct MetricsReport {
  std::string design;
  int n = 0;
  std::string fa_kind;
  std::string protocol;
  std::string delay_model;
  LatencySummary latency;
  AreaReport area;
  double power_proxy = 0;
  double pctp = 0;
  double pctp_normalized = 0;
};

/// Latency, area, power proxy and PCTP (power proxy x mean cycle time) of one
/// design's workload. pctp_normalized is filled in by compare().
MetricsReport make_report(const Netlist& netlist, std::span<const CycleReport> reports,
                          const std::string& delay_model, const AreaTable& table = AreaTable::defaults());

struct Comparison {
  int n = 0;
  std::string protocol;
  std::vector<MetricsReport> rows;  // sorted by cycle time, then PCTP, then name
  std::string winner;
};

/// Normalizes PCTP within the group and ranks it. All designs must share
/// operand size, protocol and delay model (Error(GroupMismatch) otherwise);
/// an empty list throws Error(Empty).
Comparison compare(std::vector<MetricsReport> designs);

/// Splits reports into (size, protocol) groups, ordered by size then RTZ
/// before RTO, and compares each group.
std::vector<Comparison> compare_groups(std::vector<MetricsReport> designs);

/// Text table: one block per (size, protocol) group, one row per design.
void write_table(std::ostream& os, std::span<const Comparison> groups, const AreaTable& table,
                 bool calibrated);
void write_metrics_csv(std::ostream& os, std::span<const Comparison> groups);
nlohmann::ordered_json to_json(const MetricsReport& r);
nlohmann::ordered_json to_json(std::span<const Comparison> groups);

}  // namespace qdi
