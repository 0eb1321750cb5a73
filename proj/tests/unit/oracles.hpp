#pragma once

// Reference models written independently of the library: own gate truth
// tables, a zero-delay fixed-point evaluator and plain-integer arithmetic.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "qdi/netlist.hpp"

namespace oracle {

inline int gate_output(qdi::GateKind k, const std::vector<int>& in, int held) {
  using K = qdi::GateKind;
  const auto ones = static_cast<std::size_t>(std::count(in.begin(), in.end(), 1));
  switch (k) {
    case K::And2: case K::And3: case K::And4: return ones == in.size() ? 1 : 0;
    case K::Or2: case K::Or3: case K::Or4: return ones > 0 ? 1 : 0;
    case K::Not: return in[0] ? 0 : 1;
    case K::Buf: return in[0];
    case K::C2: case K::C3:
      if (ones == in.size()) return 1;
      if (ones == 0) return 0;
      return held;
  }
  throw std::logic_error("unknown kind");
}

/// Sweeps all gates in id order until nothing changes.
inline std::vector<int> settle(const qdi::Netlist& nl, std::vector<int> lv) {
  for (int sweep = 0; sweep < 10000; ++sweep) {
    bool changed = false;
    for (const auto& g : nl.gates()) {
      std::vector<int> in;
      for (auto n : g.inputs) in.push_back(lv[static_cast<std::size_t>(n)]);
      const int out = gate_output(g.kind, in, lv[static_cast<std::size_t>(g.output)]);
      if (out != lv[static_cast<std::size_t>(g.output)]) {
        lv[static_cast<std::size_t>(g.output)] = out;
        changed = true;
      }
    }
    if (!changed) return lv;
  }
  throw std::runtime_error("no fixed point");
}

inline std::vector<int> rest_levels(const qdi::Netlist& nl) {
  std::vector<int> lv(nl.net_count());
  for (std::size_t i = 0; i < lv.size(); ++i) lv[i] = nl.rest_level(static_cast<qdi::NetId>(i));
  return lv;
}

/// -1 spacer, -2 illegal, else the bit.
inline int decode(int r1, int r0, bool rto) {
  if (rto) {
    r1 = !r1;
    r0 = !r0;
  }
  if (!r1 && !r0) return -1;
  if (r1 && r0) return -2;
  return r1 ? 1 : 0;
}

/// Drives every input port with `bits` (and the phase line), settles with
/// zero delay and decodes the outputs.
inline std::vector<int> eval_data(const qdi::Netlist& nl, const std::vector<int>& bits) {
  const bool rto = nl.protocol() == qdi::Protocol::Rto;
  auto lv = rest_levels(nl);
  const auto& ins = nl.input_ports();
  for (std::size_t k = 0; k < ins.size(); ++k) {
    const int r1 = bits[k] ? 1 : 0;
    lv[static_cast<std::size_t>(ins[k].rail1)] = rto ? !r1 : r1;
    lv[static_cast<std::size_t>(ins[k].rail0)] = rto ? r1 : !r1;
  }
  if (nl.meta().phase != qdi::kNoNet) lv[static_cast<std::size_t>(nl.meta().phase)] = rto ? 0 : 1;
  lv = settle(nl, lv);
  std::vector<int> out;
  for (const auto& p : nl.output_ports()) {
    out.push_back(decode(lv[static_cast<std::size_t>(p.rail1)], lv[static_cast<std::size_t>(p.rail0)], rto));
  }
  return out;
}

inline std::map<qdi::GateKind, std::size_t> census(const qdi::Netlist& nl) {
  std::map<qdi::GateKind, std::size_t> c;
  for (const auto& g : nl.gates()) ++c[g.kind];
  return c;
}

}  // namespace oracle
