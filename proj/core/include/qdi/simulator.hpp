#pragma once

#include <cstdint>
#include <queue>
#include <span>
#include <unordered_set>
#include <vector>

#include "qdi/delay_model.hpp"
#include "qdi/dual_rail.hpp"
#include "qdi/netlist.hpp"

namespace qdi {

inline constexpr GateId kEnvironment = kNoGate;
inline constexpr Time kDefaultGuard = 1'000'000;

struct Event {
  Time time = 0;
  NetId net = kNoNet;
  Level level = 0;
  GateId cause = kEnvironment;

  bool operator==(const Event&) const = default;
};

using Trace = std::vector<Event>;

/// Discrete-event simulator with transport delays and zero wire delay.
///
/// Events are applied in (time, net id) order. All events sharing a timestamp
/// are applied before any affected gate is re-evaluated, and each affected
/// gate is evaluated once per such batch, in gate id order. A new output value
/// is scheduled only when it differs from the value the net will hold after
/// its pending events, so applied events always change a level.
class Simulator {
 public:
  /// Throws Error(InvalidNetlist) when validate() reports anything.
  Simulator(const Netlist& netlist, DelayModel delays);
  Simulator(Netlist&&, DelayModel) = delete;  // keeps a pointer to the netlist

  /// Back to rest levels: queue, clock, trace and counters cleared.
  void reset();

  const Netlist& netlist() const { return *netlist_; }
  const DelayModel& delay_model() const { return delays_; }
  Time clock() const { return clock_; }
  Level level(NetId net) const { return levels_[static_cast<std::size_t>(net)]; }
  std::span<const Level> levels() const { return levels_; }
  Time gate_delay(GateId g) const { return gate_delay_[static_cast<std::size_t>(g)]; }

  /// Schedules an environment transition. Throws Error(NotPrimary) for nets
  /// not driven by the environment.
  void set_primary(NetId net, Level level, Time at);
  void set_primary(NetId net, Level level) { set_primary(net, level, clock_); }

  /// Zero-delay environment inverter: every change on `from` schedules the
  /// complement on `to` at the same instant.
  void link_inverter(NetId from, NetId to);

  /// Runs until no events remain. Returns the elapsed time. Throws
  /// Error(NonQuiescent) if events are still pending beyond clock + max_time.
  Time run_until_quiescent(Time max_time = kDefaultGuard);

  /// Applies every event with time <= t; the clock ends at t.
  void advance_to(Time t);

  /// Runs until `net` holds `target` (including any same-instant events).
  /// Returns false if the queue drains or clock + max_time passes first.
  bool run_until_level(NetId net, Level target, Time max_time = kDefaultGuard);

  DualRailValue read_port(const DualRailPort& port) const;

  bool quiescent() const { return live_events_ == 0; }
  std::size_t pending() const { return live_events_; }

  const Trace& trace() const { return trace_; }
  void clear_trace() { trace_.clear(); }
  void set_tracing(bool on) { tracing_ = on; }
  /// Events applied since reset, traced or not.
  std::uint64_t applied_events() const { return applied_; }
  /// Time of the most recent applied event on `net` (0 if none since reset).
  Time last_change(NetId net) const { return last_change_[static_cast<std::size_t>(net)]; }

 private:
  struct Queued {
    Time time;
    NetId net;
    std::uint64_t seq;
    Level level;
    GateId cause;
  };
  struct Later {
    bool operator()(const Queued& a, const Queued& b) const {
      if (a.time != b.time) return a.time > b.time;
      if (a.net != b.net) return a.net > b.net;
      return a.seq > b.seq;
    }
  };
  struct Latest {
    Time time = 0;
    std::uint64_t seq = 0;
    Level before = 0;
    bool live = false;
  };

  void schedule(NetId net, Level level, Time at, GateId cause);
  void pop_dead();
  /// Applies one timestamp batch and re-evaluates affected gates.
  void step();

  const Netlist* netlist_;
  DelayModel delays_;
  std::vector<Time> gate_delay_;
  std::vector<NetId> inverter_to_;  // per net, kNoNet if unlinked

  std::vector<Level> levels_;
  std::vector<Level> projected_;
  std::vector<Latest> latest_;
  std::priority_queue<Queued, std::vector<Queued>, Later> queue_;
  std::unordered_set<std::uint64_t> cancelled_;
  std::size_t live_events_ = 0;
  std::uint64_t seq_ = 0;
  Time clock_ = 0;
  Trace trace_;
  bool tracing_ = true;
  std::uint64_t applied_ = 0;
  std::vector<Time> last_change_;

  std::vector<std::uint8_t> dirty_;
  std::vector<GateId> affected_;
  std::vector<Level> scratch_;
};

/// Levels reached by applying `trace` to the rest state of `netlist`.
std::vector<Level> replay(const Netlist& netlist, const Trace& trace);

}  // namespace qdi
