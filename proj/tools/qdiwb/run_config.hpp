#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdi/delay_model.hpp"
#include "qdi/multiplier.hpp"
#include "qdi/verify.hpp"

namespace qdiwb {

inline constexpr const char* kToolName = "qdiwb";
inline constexpr const char* kToolVersion = QDIWB_VERSION;

/// Everything a run depends on. Written into every artifact so the run can
/// be repeated.
struct RunConfig {
  std::string command;
  std::uint64_t seed = 1;
  std::string delay_model = "unit";
  std::string out = ".";
  bool json = false;

  // design selection
  std::string netlist;  // input file; overrides the generator flags
  int n = 4;
  std::string fa = "dims";
  std::string protocol = "rtz";
  bool c3_tree = false;
  bool or4_tree = false;
  std::string mutate_swap_fa;

  std::string coverage = "exhaustive";  // or random:<count>
  std::string area_table;

  // sim
  bool eager = false;
  bool vcd = false;

  // verify
  std::vector<std::string> checks;
  std::size_t di_seeds = 100;
  std::size_t di_pairs = 64;
  std::size_t weak_orders = 200;

  // bench
  std::vector<int> sizes{4};
  std::vector<std::string> fas{"dims", "weak"};
  std::vector<std::string> protocols{"rtz", "rto"};
  std::size_t pairs = 0;  // 0: exhaustive up to n = 4, else 10000 random

  // report
  std::string in;
  std::string format = "table";

  nlohmann::ordered_json to_json() const;
  /// Artifact header: tool, version and this config.
  nlohmann::ordered_json provenance() const;
  /// Single comment line for CSV, text and VCD artifacts (without the
  /// comment marker).
  std::string provenance_line() const;

  qdi::MultiplierSpec spec() const;
  qdi::DelayModel delays() const;
  qdi::Coverage operand_coverage() const;
};

}  // namespace qdiwb
