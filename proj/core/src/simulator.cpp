#include "qdi/simulator.hpp"

#include <algorithm>

#include "qdi/error.hpp"

namespace qdi {

Simulator::Simulator(const Netlist& netlist, DelayModel delays)
    : netlist_(&netlist), delays_(std::move(delays)) {
  require_valid(netlist);
  for (const auto& g : netlist.gates()) gate_delay_.push_back(delays_.delay(g));
  inverter_to_.assign(netlist.net_count(), kNoNet);
  dirty_.assign(netlist.gates().size(), 0);
  reset();
}

void Simulator::reset() {
  const std::size_t n = netlist_->net_count();
  levels_.resize(n);
  for (std::size_t i = 0; i < n; ++i) levels_[i] = netlist_->rest_level(static_cast<NetId>(i));
  projected_ = levels_;
  latest_.assign(n, Latest{});
  queue_ = {};
  cancelled_.clear();
  live_events_ = 0;
  clock_ = 0;
  trace_.clear();
  applied_ = 0;
  last_change_.assign(n, 0);
}

void Simulator::link_inverter(NetId from, NetId to) {
  if (!netlist_->is_primary(to)) {
    throw Error(ErrorCode::NotPrimary, "inverter target net " + std::to_string(to));
  }
  inverter_to_.at(static_cast<std::size_t>(from)) = to;
}

void Simulator::set_primary(NetId net, Level level, Time at) {
  if (!netlist_->is_primary(net)) {
    throw Error(ErrorCode::NotPrimary, "net " + std::to_string(net) + " is not environment-driven");
  }
  if (at < clock_) {
    throw Error(ErrorCode::InvalidArgument, "stimulus at " + std::to_string(at) +
                                                " precedes clock " + std::to_string(clock_));
  }
  schedule(net, level ? 1 : 0, at, kEnvironment);
}

void Simulator::schedule(NetId net, Level level, Time at, GateId cause) {
  const auto i = static_cast<std::size_t>(net);
  Latest& last = latest_[i];
  if (last.live && last.time == at) {
    // Same-instant re-evaluation supersedes the earlier decision.
    cancelled_.insert(last.seq);
    --live_events_;
    projected_[i] = last.before;
    last.live = false;
  }
  if (level == projected_[i]) return;
  const std::uint64_t seq = seq_++;
  queue_.push({at, net, seq, level, cause});
  ++live_events_;
  last = {at, seq, projected_[i], true};
  projected_[i] = level;
}

void Simulator::pop_dead() {
  while (!queue_.empty()) {
    auto it = cancelled_.find(queue_.top().seq);
    if (it == cancelled_.end()) return;
    cancelled_.erase(it);
    queue_.pop();
  }
}

void Simulator::step() {
  pop_dead();
  const Time t = queue_.top().time;
  clock_ = std::max(clock_, t);
  affected_.clear();
  while (!queue_.empty() && queue_.top().time == t) {
    const Queued ev = queue_.top();
    queue_.pop();
    if (auto it = cancelled_.find(ev.seq); it != cancelled_.end()) {
      cancelled_.erase(it);
      continue;
    }
    --live_events_;
    const auto i = static_cast<std::size_t>(ev.net);
    if (latest_[i].live && latest_[i].seq == ev.seq) latest_[i].live = false;
    if (levels_[i] == ev.level) continue;
    levels_[i] = ev.level;
    ++applied_;
    last_change_[i] = t;
    if (tracing_) trace_.push_back({t, ev.net, ev.level, ev.cause});
    for (const auto& fo : netlist_->net(ev.net).fanout) {
      auto& d = dirty_[static_cast<std::size_t>(fo.gate)];
      if (!d) {
        d = 1;
        affected_.push_back(fo.gate);
      }
    }
    if (const NetId to = inverter_to_[i]; to != kNoNet) {
      schedule(to, ev.level ? 0 : 1, t, kEnvironment);
    }
  }
  std::sort(affected_.begin(), affected_.end());
  const auto& gates = netlist_->gates();
  for (GateId gid : affected_) {
    dirty_[static_cast<std::size_t>(gid)] = 0;
    const Gate& g = gates[static_cast<std::size_t>(gid)];
    scratch_.clear();
    for (NetId in : g.inputs) scratch_.push_back(levels_[static_cast<std::size_t>(in)]);
    const Level held = projected_[static_cast<std::size_t>(g.output)];
    const Level v = evaluate(g.kind, scratch_, held);
    schedule(g.output, v, t + gate_delay_[static_cast<std::size_t>(gid)], gid);
  }
}

Time Simulator::run_until_quiescent(Time max_time) {
  const Time start = clock_;
  const Time limit = start + max_time;
  while (true) {
    pop_dead();
    if (queue_.empty()) break;
    if (queue_.top().time > limit) {
      throw Error(ErrorCode::NonQuiescent, "events pending past t=" + std::to_string(limit));
    }
    step();
  }
  return clock_ - start;
}

void Simulator::advance_to(Time t) {
  while (true) {
    pop_dead();
    if (queue_.empty() || queue_.top().time > t) break;
    step();
  }
  clock_ = std::max(clock_, t);
}

bool Simulator::run_until_level(NetId net, Level target, Time max_time) {
  const Time limit = clock_ + max_time;
  const auto i = static_cast<std::size_t>(net);
  while (levels_[i] != target) {
    pop_dead();
    if (queue_.empty() || queue_.top().time > limit) return false;
    step();
  }
  // finish same-instant environment responses
  while (true) {
    pop_dead();
    if (queue_.empty() || queue_.top().time != clock_) break;
    step();
  }
  return true;
}

DualRailValue Simulator::read_port(const DualRailPort& port) const {
  return decode({level(port.rail1), level(port.rail0)}, netlist_->protocol());
}

std::vector<Level> replay(const Netlist& nl, const Trace& trace) {
  std::vector<Level> levels(nl.net_count());
  for (std::size_t i = 0; i < levels.size(); ++i) levels[i] = nl.rest_level(static_cast<NetId>(i));
  for (const auto& ev : trace) levels.at(static_cast<std::size_t>(ev.net)) = ev.level;
  return levels;
}

}  // namespace qdi
