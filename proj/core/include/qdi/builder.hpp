#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qdi/netlist.hpp"

namespace qdi {

struct Rails {
  NetId rail1 = kNoNet;
  NetId rail0 = kNoNet;
  bool operator==(const Rails&) const = default;
};

/// Structural choices shared by every cell constructor.
struct BuildOptions {
  bool c3_as_tree = false;   // emit C3 as C2(C2(x, y), z)
  bool or4_as_tree = false;  // emit OR4 as OR2(OR2(w, x), OR2(y, z))
};

/// Incremental RTZ-polarity netlist construction. Net and gate ids are dense
/// and assigned in creation order; reset levels are computed from the idle
/// state (rails, phase and ties low, ack_in high).
class NetlistBuilder {
 public:
  explicit NetlistBuilder(BuildOptions opts = {}) : opts_(opts) {}

  const BuildOptions& options() const { return opts_; }

  Rails add_input_port(const std::string& name);
  void add_output_port(const std::string& name, Rails rails);

  NetId ack_in();
  void set_ack_out(NetId net) { ack_out_ = net; }
  NetId phase();
  NetId new_tie();

  NetId gate(GateKind kind, std::initializer_list<NetId> inputs);
  NetId gate(GateKind kind, std::span<const NetId> inputs);

  /// Muller C-element over 2 or 3 inputs, honouring c3_as_tree.
  NetId c_element(std::span<const NetId> inputs);
  /// OR over 2 to 4 inputs, honouring or4_as_tree.
  NetId or_n(std::span<const NetId> inputs);

  void add_instance(CellInstance inst) { meta_.instances.push_back(std::move(inst)); }

  Netlist build(const std::string& name, nlohmann::ordered_json params) &&;

 private:
  NetId new_net(Level rest);

  BuildOptions opts_;
  std::vector<Level> rest_;
  std::vector<Gate> gates_;
  std::vector<DualRailPort> ports_;
  NetId ack_out_ = kNoNet;
  NetId ack_in_ = kNoNet;
  Metadata meta_;
};

}  // namespace qdi
