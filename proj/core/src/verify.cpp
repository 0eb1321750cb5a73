#include "qdi/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <thread>
#include <utility>

#include "qdi/error.hpp"

namespace qdi {

namespace {

using ojson = nlohmann::ordered_json;

std::uint64_t width_mask(std::size_t bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

void fail(CheckOutcome& out, Counterexample cx) {
  if (!out.passed) return;  // keep the first counterexample
  out.passed = false;
  out.summary = cx.detail;
  out.counterexample = std::move(cx);
}

ojson operands_json(std::size_t index, Operands ops) {
  return ojson{{"cycle", index}, {"a", ops.a}, {"b", ops.b}};
}

ojson operand_list_json(std::span<const Operands> ops) {
  auto arr = ojson::array();
  for (const auto& o : ops) arr.push_back(ojson::array({o.a, o.b}));
  return arr;
}

Trace tail(const Trace& tr, std::size_t max_events = 256) {
  const std::size_t from = tr.size() > max_events ? tr.size() - max_events : 0;
  return Trace(tr.begin() + static_cast<std::ptrdiff_t>(from), tr.end());
}

// --- staggered-arrival driver shared by the indication checks ---

struct Source {
  std::string name;
  NetId rail1 = kNoNet;
  NetId rail0 = kNoNet;  // kNoNet for the phase line
};

std::vector<Source> sources(const Netlist& nl) {
  std::vector<Source> s;
  for (const auto& p : nl.input_ports()) s.push_back({p.name, p.rail1, p.rail0});
  if (nl.meta().phase != kNoNet) s.push_back({"phase", nl.meta().phase, kNoNet});
  return s;
}

void apply_source(Simulator& sim, const Source& s, bool data, bool bit) {
  const Protocol p = sim.netlist().protocol();
  const Level sp = spacer_level(p);
  if (s.rail0 == kNoNet) {
    sim.set_primary(s.rail1, data ? static_cast<Level>(!sp) : sp);
    return;
  }
  const RailPair r = data ? encode(bit, p) : spacer(p);
  sim.set_primary(s.rail1, r.rail1);
  sim.set_primary(s.rail0, r.rail0);
}

// Observation points: output ports, or ack_out for circuits without them.
struct Observed {
  std::vector<DualRailPort> ports;
  NetId ack = kNoNet;
};

Observed observed(const Netlist& nl) {
  Observed o;
  o.ports = nl.output_ports();
  if (o.ports.empty()) o.ack = nl.ack_out();
  return o;
}

// Count of observation points holding the target half's value, and whether
// any of them is ILLEGAL.
struct Completion {
  std::size_t complete = 0;
  std::size_t total = 0;
  bool illegal = false;
};

Completion completion(const Simulator& sim, const Observed& o, bool data) {
  Completion c;
  const Netlist& nl = sim.netlist();
  for (const auto& p : o.ports) {
    const auto v = sim.read_port(p);
    if (v == DualRailValue::Illegal) c.illegal = true;
    if (data ? is_data(v) : v == DualRailValue::Spacer) ++c.complete;
    ++c.total;
  }
  if (o.ack != kNoNet) {
    const bool moved = sim.level(o.ack) != nl.rest_level(o.ack);
    if (moved == data) ++c.complete;
    ++c.total;
  }
  return c;
}

bool output_moved_since(const Simulator& sim, const Observed& o, std::size_t from) {
  const auto& tr = sim.trace();
  for (std::size_t e = from; e < tr.size(); ++e) {
    const NetId n = tr[e].net;
    if (n == o.ack) return true;
    for (const auto& p : o.ports) {
      if (n == p.rail1 || n == p.rail0) return true;
    }
  }
  return false;
}

struct Trial {
  std::vector<bool> bits;           // one per input port
  std::vector<std::size_t> order;   // permutation of sources
};

enum class IndicationMode { Strong, Weak };

// Runs one staggered trial (data half then spacer half). Returns a
// description of the first violation, or empty.
std::string run_trial(Simulator& sim, const std::vector<Source>& src, const Observed& obs,
                      const Trial& t, Time settle, IndicationMode mode, std::size_t& trace_from,
                      std::string& half_name) {
  const Netlist& nl = sim.netlist();
  const bool manual_ack = nl.ack_in() != kNoNet && nl.ack_out() == kNoNet;
  sim.reset();
  for (int h = 0; h < 2; ++h) {
    const bool data = h == 0;
    half_name = data ? "data" : "spacer";
    if (!data && manual_ack) {
      sim.set_primary(nl.ack_in(), static_cast<Level>(!nl.rest_level(nl.ack_in())));
      sim.run_until_quiescent();
    }
    trace_from = sim.trace().size();
    for (std::size_t s = 0; s < t.order.size(); ++s) {
      const std::size_t k = t.order[s];
      const bool bit = k < t.bits.size() && t.bits[k];
      apply_source(sim, src[k], data, bit);
      const bool last = s + 1 == t.order.size();
      if (last) {
        sim.run_until_quiescent();
      } else {
        sim.advance_to(sim.clock() + settle);
      }
      const Completion c = completion(sim, obs, data);
      if (c.illegal) return "an output read ILLEGAL after " + src[k].name + " arrived";
      if (!last) {
        if (mode == IndicationMode::Strong && output_moved_since(sim, obs, trace_from)) {
          return "an output rail moved with " + std::to_string(t.order.size() - s - 1) +
                 " input(s) withheld";
        }
        if (mode == IndicationMode::Weak && c.complete == c.total) {
          return "all outputs completed with " + std::to_string(t.order.size() - s - 1) +
                 " input(s) withheld";
        }
      } else if (c.complete != c.total) {
        return std::to_string(c.total - c.complete) + " output(s) incomplete after all inputs arrived";
      }
    }
    if (!data && manual_ack) {
      sim.set_primary(nl.ack_in(), nl.rest_level(nl.ack_in()));
      sim.run_until_quiescent();
    }
  }
  return {};
}

CheckOutcome run_indication(const std::string& name, const Netlist& nl, const DelayModel& delays,
                            IndicationMode mode, std::size_t exhaustive_limit,
                            std::size_t sampled, std::uint64_t seed) {
  CheckOutcome out;
  out.name = name;
  const auto src = sources(nl);
  const auto obs = observed(nl);
  const std::size_t n_ports = nl.input_ports().size();
  if (src.empty()) {
    out.summary = "no inputs";
    return out;
  }
  Simulator sim(nl, delays);
  if (nl.ack_in() != kNoNet && nl.ack_out() != kNoNet) sim.link_inverter(nl.ack_out(), nl.ack_in());
  sim.set_tracing(true);
  const Time settle = withheld_settle_time(nl, delays);

  std::vector<Trial> trials;
  if (src.size() <= exhaustive_limit) {
    std::vector<std::size_t> perm(src.size());
    for (std::uint64_t cw = 0; cw < (std::uint64_t{1} << n_ports); ++cw) {
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      do {
        Trial t;
        for (std::size_t k = 0; k < n_ports; ++k) t.bits.push_back(((cw >> k) & 1U) != 0);
        t.order = perm;
        trials.push_back(std::move(t));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < sampled; ++i) {
      Trial t;
      for (std::size_t k = 0; k < n_ports; ++k) t.bits.push_back((rng() & 1U) != 0);
      t.order.resize(src.size());
      std::iota(t.order.begin(), t.order.end(), std::size_t{0});
      // Fisher-Yates with the raw engine so orders do not depend on the
      // standard library's distribution implementation.
      for (std::size_t j = t.order.size(); j > 1; --j) {
        std::swap(t.order[j - 1], t.order[rng() % j]);
      }
      trials.push_back(std::move(t));
    }
  }

  for (const auto& t : trials) {
    ++out.cases;
    std::size_t trace_from = 0;
    std::string half;
    const std::string why = run_trial(sim, src, obs, t, settle, mode, trace_from, half);
    if (why.empty()) continue;
    Counterexample cx;
    cx.seed = seed;
    cx.delay_model = delays.to_json();
    auto bits = ojson::object();
    for (std::size_t k = 0; k < n_ports; ++k) bits[src[k].name] = t.bits[k] ? 1 : 0;
    auto order = ojson::array();
    for (auto k : t.order) order.push_back(src[k].name);
    cx.stimulus = ojson{{"codeword", bits}, {"order", order}, {"half", half}, {"settle", settle}};
    cx.detail = half + " half: " + why;
    const auto& tr = sim.trace();
    cx.trace.assign(tr.begin() + static_cast<std::ptrdiff_t>(trace_from), tr.end());
    fail(out, std::move(cx));
    return out;
  }
  out.summary = std::to_string(out.cases) + " staggered trials";
  return out;
}

}  // namespace

ojson to_json(const CheckOutcome& outcome, bool include_trace) {
  ojson j;
  j["name"] = outcome.name;
  j["passed"] = outcome.passed;
  j["cases"] = outcome.cases;
  j["summary"] = outcome.summary;
  if (outcome.counterexample) {
    const auto& cx = *outcome.counterexample;
    ojson c;
    c["seed"] = cx.seed;
    c["delay_model"] = cx.delay_model;
    c["stimulus"] = cx.stimulus;
    c["detail"] = cx.detail;
    if (include_trace) {
      auto tr = ojson::array();
      for (const auto& e : cx.trace) {
        tr.push_back(ojson::array({e.time, e.net, e.level, e.cause}));
      }
      c["trace"] = std::move(tr);
    }
    j["counterexample"] = std::move(c);
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

std::vector<Operands> Coverage::operands(int width) const {
  if (width < 1 || width > 32) throw Error(ErrorCode::InvalidArgument, "operand width out of range");
  const std::uint64_t mask = width_mask(static_cast<std::size_t>(width));
  std::vector<Operands> ops;
  if (exhaustive) {
    if (width > 12) {
      throw Error(ErrorCode::InvalidArgument,
                  "exhaustive coverage for " + std::to_string(width) + "-bit operands is too large");
    }
    const std::uint64_t n = std::uint64_t{1} << width;
    ops.reserve(static_cast<std::size_t>(n * n));
    for (std::uint64_t a = 0; a < n; ++a) {
      for (std::uint64_t b = 0; b < n; ++b) ops.push_back({a, b});
    }
    return ops;
  }
  std::mt19937_64 rng(seed);
  ops.reserve(random_pairs);
  for (std::size_t i = 0; i < random_pairs; ++i) {
    const std::uint64_t a = rng() & mask;
    const std::uint64_t b = rng() & mask;
    ops.push_back({a, b});
  }
  return ops;
}

int operand_width(const Netlist& netlist) {
  int a = 0;
  int b = 0;
  for (const auto& p : netlist.input_ports()) {
    if (p.name.size() < 2) continue;
    const std::string idx = p.name.substr(1);
    if (!std::all_of(idx.begin(), idx.end(), [](unsigned char c) { return std::isdigit(c); })) {
      continue;
    }
    if (p.name[0] == 'a') ++a;
    if (p.name[0] == 'b') ++b;
  }
  if (a == 0 || a != b) {
    throw Error(ErrorCode::InvalidArgument, "netlist has no a<i>/b<i> operand ports");
  }
  return a;
}

WorkloadResult run_workload(const Netlist& netlist, std::span<const Operands> ops,
                            const DelayModel& delays, const Oracle& oracle, HarnessOptions opts) {
  WorkloadResult w;
  w.functional.name = "functional";
  w.protocol.name = "protocol";
  w.monotonicity.name = "monotonicity";
  const std::uint64_t mask = width_mask(netlist.output_ports().size());

  Harness h(netlist, delays, opts);
  w.reports.reserve(ops.size());
  CycleCapture cap;
  auto make_cx = [&](std::size_t i, std::string detail, Trace trace) {
    Counterexample cx;
    cx.seed = delays.seed();
    cx.delay_model = delays.to_json();
    cx.stimulus = ojson{{"operands", operand_list_json(ops.subspan(0, i + 1))},
                        {"failing", operands_json(i, ops[i])},
                        {"eager_environment", opts.eager_environment}};
    cx.detail = "cycle " + std::to_string(i) + " (a=" + std::to_string(ops[i].a) +
                ", b=" + std::to_string(ops[i].b) + "): " + detail;
    cx.trace = std::move(trace);
    return cx;
  };

  for (std::size_t i = 0; i < ops.size(); ++i) {
    CycleReport r;
    try {
      r = h.run_cycle(ops[i], &cap);
    } catch (const Error& e) {
      auto cx = make_cx(i, e.what(), tail(h.sim().trace()));
      fail(w.functional, cx);
      fail(w.protocol, std::move(cx));
      break;
    }
    ++w.functional.cases;
    ++w.protocol.cases;
    ++w.monotonicity.cases;
    const std::uint64_t want = oracle(ops[i].a, ops[i].b) & mask;
    if (r.product != want) {
      fail(w.functional, make_cx(i, "decoded " + std::to_string(r.product) + ", expected " +
                                        std::to_string(want),
                                 cap.events));
    }
    if (r.protocol_violations != 0 || r.late_output_events != 0 || !r.returned_to_rest) {
      std::string why;
      if (r.protocol_violations) {
        why = std::to_string(r.protocol_violations) + " port(s) did not alternate data/spacer once";
      } else if (r.late_output_events) {
        why = std::to_string(r.late_output_events) + " output event(s) after completion";
      } else {
        why = "circuit did not return to its rest state";
      }
      fail(w.protocol, make_cx(i, why, cap.events));
    }
    const std::size_t bounds[] = {0, cap.spacer_index};
    auto mono = check_monotonicity(netlist, cap.events, bounds);
    if (!mono.passed) {
      fail(w.monotonicity, make_cx(i, mono.summary, std::move(mono.counterexample->trace)));
    }
    w.reports.push_back(r);
    if (!w.passed()) break;
  }
  for (auto* c : {&w.functional, &w.protocol, &w.monotonicity}) {
    if (c->passed) c->summary = std::to_string(c->cases) + " cycles";
  }
  return w;
}

CheckOutcome check_functional(const Netlist& netlist, const Oracle& oracle, const Coverage& coverage,
                              const DelayModel& delays, HarnessOptions opts) {
  const auto ops = coverage.operands(operand_width(netlist));
  auto w = run_workload(netlist, ops, delays, oracle, opts);
  if (w.functional.counterexample) w.functional.counterexample->seed = coverage.seed;
  return w.functional;
}

Time withheld_settle_time(const Netlist& netlist, const DelayModel& delays) {
  return 50 * std::max<Time>(1, delays.max_delay(netlist));
}

CheckOutcome check_strong_indication(const Netlist& cell, const DelayModel& delays) {
  const auto n = sources(cell).size();
  if (n > 4) {
    throw Error(ErrorCode::InvalidArgument,
                "strong-indication check enumerates orders; " + std::to_string(n) + " inputs is too many");
  }
  return run_indication("strong_indication", cell, delays, IndicationMode::Strong, n, 0, 0);
}

CheckOutcome check_weak_indication(const Netlist& circuit, const WeakIndicationOptions& opts,
                                   const DelayModel& delays) {
  return run_indication("weak_indication", circuit, delays, IndicationMode::Weak,
                        opts.exhaustive_limit, opts.sampled_orders, opts.seed);
}

CheckOutcome check_monotonicity(const Netlist& netlist, const Trace& trace,
                                std::span<const std::size_t> boundaries) {
  CheckOutcome out;
  out.name = "monotonicity";
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> net_half(netlist.net_count(), kNone);
  std::vector<std::size_t> gate_half(netlist.gates().size(), kNone);
  std::vector<NetId> gate_input(netlist.gates().size(), kNoNet);

  std::size_t half = 0;  // 0 = before the first boundary
  std::size_t half_from = 0;
  std::size_t next = 0;
  auto report = [&](std::size_t e, std::string why) {
    Counterexample cx;
    cx.stimulus = ojson{{"half", half}, {"event", e}};
    cx.detail = std::move(why);
    cx.trace.assign(trace.begin() + static_cast<std::ptrdiff_t>(half_from),
                    trace.begin() + static_cast<std::ptrdiff_t>(e + 1));
    fail(out, std::move(cx));
  };

  for (std::size_t e = 0; e < trace.size(); ++e) {
    while (next < boundaries.size() && boundaries[next] <= e) {
      half = ++next;
      half_from = boundaries[next - 1];
    }
    ++out.cases;
    const Event& ev = trace[e];
    const auto n = static_cast<std::size_t>(ev.net);
    if (n >= net_half.size()) throw Error(ErrorCode::InvalidArgument, "trace names unknown net");
    if (net_half[n] == half) {
      report(e, "net " + std::to_string(ev.net) + " changed twice within one half-cycle (t=" +
                    std::to_string(ev.time) + ")");
      return out;
    }
    net_half[n] = half;
    for (const auto& f : netlist.net(ev.net).fanout) {
      const auto g = static_cast<std::size_t>(f.gate);
      if (!is_combiner(netlist.gate(f.gate).kind)) continue;
      if (gate_half[g] == half && gate_input[g] != ev.net) {
        report(e, "gate " + std::to_string(f.gate) + " (" +
                      std::string(to_string(netlist.gate(f.gate).kind)) + ") saw inputs " +
                      std::to_string(gate_input[g]) + " and " + std::to_string(ev.net) +
                      " change within one half-cycle");
        return out;
      }
      gate_half[g] = half;
      gate_input[g] = ev.net;
    }
  }
  out.summary = std::to_string(out.cases) + " events";
  return out;
}

CheckOutcome check_cell_monotonicity(const Netlist& cell, const DelayModel& delays) {
  CheckOutcome out;
  out.name = "cell_monotonicity";
  const std::size_t n = cell.input_ports().size();
  if (n > 16) throw Error(ErrorCode::InvalidArgument, "too many cell inputs to enumerate");
  const auto src = sources(cell);
  Simulator sim(cell, delays);
  sim.set_tracing(true);
  for (std::uint64_t cw = 0; cw < (std::uint64_t{1} << n); ++cw) {
    ++out.cases;
    sim.reset();
    for (std::size_t k = 0; k < src.size(); ++k) {
      apply_source(sim, src[k], true, k < n && ((cw >> k) & 1U) != 0);
    }
    sim.run_until_quiescent();
    const std::size_t bounds[] = {0, sim.trace().size()};
    for (const auto& s : src) apply_source(sim, s, false, false);
    sim.run_until_quiescent();
    auto m = check_monotonicity(cell, sim.trace(), bounds);
    if (!m.passed) {
      auto cx = std::move(*m.counterexample);
      auto bits = ojson::object();
      for (std::size_t k = 0; k < n; ++k) bits[src[k].name] = ((cw >> k) & 1U) ? 1 : 0;
      cx.delay_model = delays.to_json();
      cx.stimulus = ojson{{"codeword", bits}};
      fail(out, std::move(cx));
      return out;
    }
  }
  out.summary = std::to_string(out.cases) + " codewords";
  return out;
}

CheckOutcome check_delay_insensitivity(const Netlist& netlist, std::size_t n_seeds,
                                       std::span<const Operands> ops,
                                       const DelayInsensitivityOptions& opts) {
  CheckOutcome out;
  out.name = "delay_insensitivity";

  // Reference products under unit delays and a patient environment.
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> ref;
  {
    Harness h(netlist, DelayModel::unit());
    for (std::size_t i = 0; i < ops.size(); ++i) {
      try {
        ref[{ops[i].a, ops[i].b}] = h.run_cycle(ops[i]).product;
      } catch (const Error& e) {
        Counterexample cx;
        cx.delay_model = DelayModel::unit().to_json();
        cx.stimulus = ojson{{"operands", operand_list_json(ops.subspan(0, i + 1))}};
        cx.detail = std::string("reference run failed: ") + e.what();
        cx.trace = tail(h.sim().trace());
        fail(out, std::move(cx));
        return out;
      }
    }
  }
  const Oracle oracle = [&ref](std::uint64_t a, std::uint64_t b) { return ref.at({a, b}); };

  std::vector<std::optional<Counterexample>> failures(n_seeds);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n_seeds; i = next++) {
      const std::uint64_t seed = opts.base_seed + i;
      DelayModel d = DelayModel::random(seed, opts.lo, opts.hi);
      for (const auto& [g, t] : opts.overrides) d.override_gate(g, t);
      HarnessOptions ho;
      ho.eager_environment = opts.eager_environment;
      auto w = run_workload(netlist, ops, d, oracle, ho);
      for (auto* c : {&w.functional, &w.protocol, &w.monotonicity}) {
        if (!c->passed) {
          auto cx = std::move(*c->counterexample);
          cx.seed = seed;
          cx.detail = c->name + ": " + cx.detail;
          failures[i] = std::move(cx);
          break;
        }
      }
    }
  };
  unsigned workers = opts.workers ? opts.workers : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, n_seeds)));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  out.cases = n_seeds * ops.size();
  for (auto& f : failures) {
    if (f) {
      fail(out, std::move(*f));
      return out;
    }
  }
  out.summary = std::to_string(n_seeds) + " seeds x " + std::to_string(ops.size()) +
                " operand pairs agree with the unit-delay reference";
  return out;
}

std::vector<DualRailValue> evaluate_cell(Simulator& sim, const std::vector<bool>& bits) {
  const Netlist& nl = sim.netlist();
  const auto src = sources(nl);
  if (bits.size() != nl.input_ports().size()) {
    throw Error(ErrorCode::InvalidArgument, "expected one bit per input port");
  }
  for (std::size_t k = 0; k < src.size(); ++k) apply_source(sim, src[k], true, k < bits.size() && bits[k]);
  sim.run_until_quiescent();
  std::vector<DualRailValue> out;
  for (const auto& p : nl.output_ports()) out.push_back(sim.read_port(p));
  for (const auto& s : src) apply_source(sim, s, false, false);
  sim.run_until_quiescent();
  return out;
}

CheckOutcome check_rtz_rto_duality(const Netlist& rtz, const Coverage& coverage) {
  if (rtz.protocol() != Protocol::Rtz) {
    throw Error(ErrorCode::InvalidArgument, "duality check starts from an RTZ netlist");
  }
  CheckOutcome out;
  out.name = "rtz_rto_duality";
  const Netlist rto = dualize(rtz);

  auto structural = [&](std::string why) {
    Counterexample cx;
    cx.detail = std::move(why);
    fail(out, std::move(cx));
  };
  if (dualize(rto) != rtz) structural("dualize is not an involution on this netlist");
  std::map<GateKind, std::size_t> census_z, census_o;
  for (const auto& g : rtz.gates()) ++census_z[dual(g.kind)];
  for (const auto& g : rto.gates()) ++census_o[g.kind];
  if (census_z != census_o || rtz.gates().size() != rto.gates().size()) {
    structural("dual gate census differs");
  }
  if (!out.passed) return out;

  const bool handshake = rtz.ack_out() != kNoNet && !rtz.output_ports().empty();
  if (handshake) {
    const auto ops = coverage.operands(operand_width(rtz));
    Harness hz(rtz, DelayModel::unit());
    Harness ho(rto, DelayModel::unit());
    for (std::size_t i = 0; i < ops.size(); ++i) {
      ++out.cases;
      std::string why;
      std::uint64_t pz = 0, po = 0;
      try {
        pz = hz.run_cycle(ops[i]).product;
        po = ho.run_cycle(ops[i]).product;
      } catch (const Error& e) {
        why = e.what();
      }
      if (why.empty() && pz != po) {
        why = "RTZ decoded " + std::to_string(pz) + ", RTO decoded " + std::to_string(po);
      }
      if (!why.empty()) {
        Counterexample cx;
        cx.seed = coverage.seed;
        cx.delay_model = DelayModel::unit().to_json();
        cx.stimulus = operands_json(i, ops[i]);
        cx.detail = why;
        cx.trace = tail(ho.sim().trace());
        fail(out, std::move(cx));
        return out;
      }
    }
  } else {
    const std::size_t n = rtz.input_ports().size();
    if (n > 16) throw Error(ErrorCode::InvalidArgument, "too many cell inputs to enumerate");
    Simulator sz(rtz, DelayModel::unit());
    Simulator so(rto, DelayModel::unit());
    for (std::uint64_t cw = 0; cw < (std::uint64_t{1} << n); ++cw) {
      ++out.cases;
      std::vector<bool> bits(n);
      for (std::size_t k = 0; k < n; ++k) bits[k] = ((cw >> k) & 1U) != 0;
      const auto vz = evaluate_cell(sz, bits);
      const auto vo = evaluate_cell(so, bits);
      if (vz != vo) {
        Counterexample cx;
        cx.delay_model = DelayModel::unit().to_json();
        auto b = ojson::array();
        for (bool x : bits) b.push_back(x ? 1 : 0);
        cx.stimulus = ojson{{"codeword", b}};
        cx.detail = "RTZ and RTO cells decode differently";
        cx.trace = tail(so.trace());
        fail(out, std::move(cx));
        return out;
      }
    }
  }
  out.summary = std::to_string(out.cases) + " stimuli agree";
  return out;
}

Trace replay_counterexample(const Netlist& netlist, const CheckOutcome& outcome,
                           const Oracle& oracle) {
  if (!outcome.counterexample) {
    throw Error(ErrorCode::InvalidArgument, "outcome '" + outcome.name + "' has no counterexample");
  }
  const Counterexample& cx = *outcome.counterexample;
  const DelayModel delays = DelayModel::from_json(cx.delay_model);
  const auto& name = outcome.name;
  try {
    if (name == "functional" || name == "protocol" || name == "monotonicity" ||
        name == "delay_insensitivity") {
      std::vector<Operands> ops;
      for (const auto& o : cx.stimulus.at("operands")) {
        ops.push_back({o.at(0).get<std::uint64_t>(), o.at(1).get<std::uint64_t>()});
      }
      HarnessOptions ho;
      ho.eager_environment = cx.stimulus.value("eager_environment", false);
      std::string check = name;
      Oracle ref = oracle;
      if (name == "delay_insensitivity") {
        check = cx.detail.substr(0, cx.detail.find(':'));
        auto table = std::make_shared<std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t>>();
        Harness h(netlist, DelayModel::unit());
        for (const auto& o : ops) (*table)[{o.a, o.b}] = h.run_cycle(o).product;
        ref = [table](std::uint64_t a, std::uint64_t b) { return table->at({a, b}); };
      }
      const auto w = run_workload(netlist, ops, delays, ref, ho);
      for (const auto* c : {&w.functional, &w.protocol, &w.monotonicity}) {
        if (c->name == check && c->counterexample) return c->counterexample->trace;
      }
      return {};
    }
    if (name == "strong_indication" || name == "weak_indication") {
      const auto src = sources(netlist);
      Trial t;
      for (std::size_t k = 0; k < netlist.input_ports().size(); ++k) {
        t.bits.push_back(cx.stimulus.at("codeword").at(src[k].name).get<int>() != 0);
      }
      for (const auto& n : cx.stimulus.at("order")) {
        const auto it = std::find_if(src.begin(), src.end(),
                                     [&](const Source& s) { return s.name == n.get<std::string>(); });
        if (it == src.end()) throw Error(ErrorCode::InvalidArgument, "unknown source in order");
        t.order.push_back(static_cast<std::size_t>(it - src.begin()));
      }
      Simulator sim(netlist, delays);
      if (netlist.ack_in() != kNoNet && netlist.ack_out() != kNoNet) {
        sim.link_inverter(netlist.ack_out(), netlist.ack_in());
      }
      sim.set_tracing(true);
      std::size_t from = 0;
      std::string half;
      const auto mode = name == "strong_indication" ? IndicationMode::Strong : IndicationMode::Weak;
      const std::string why = run_trial(sim, src, observed(netlist), t,
                                        cx.stimulus.at("settle").get<Time>(), mode, from, half);
      if (why.empty()) return {};
      const auto& tr = sim.trace();
      return Trace(tr.begin() + static_cast<std::ptrdiff_t>(from), tr.end());
    }
    if (name == "cell_monotonicity") {
      const auto src = sources(netlist);
      const std::size_t n = netlist.input_ports().size();
      Simulator sim(netlist, delays);
      sim.set_tracing(true);
      for (std::size_t k = 0; k < src.size(); ++k) {
        apply_source(sim, src[k], true, k < n && cx.stimulus.at("codeword").at(src[k].name).get<int>() != 0);
      }
      sim.run_until_quiescent();
      const std::size_t bounds[] = {0, sim.trace().size()};
      for (const auto& s : src) apply_source(sim, s, false, false);
      sim.run_until_quiescent();
      auto m = check_monotonicity(netlist, sim.trace(), bounds);
      return m.counterexample ? m.counterexample->trace : Trace{};
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, "counterexample stimulus: " + std::string(e.what()));
  }
  throw Error(ErrorCode::InvalidArgument, "no replay for '" + name + "' counterexamples");
}

}  // namespace qdi
