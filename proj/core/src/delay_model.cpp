#include "qdi/delay_model.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "qdi/error.hpp"

namespace qdi {

DelayModel DelayModel::unit() { return DelayModel{}; }

DelayModel DelayModel::table(std::map<GateKind, Time> delays, bool calibrated_ns) {
  for (const auto& [k, d] : delays) {
    if (d == 0) throw Error(ErrorCode::InvalidArgument, "delay for " + std::string(to_string(k)) + " must be > 0");
  }
  DelayModel m;
  m.mode_ = DelayMode::FixedTable;
  m.table_ = std::move(delays);
  m.calibrated_ = calibrated_ns;
  return m;
}

DelayModel DelayModel::random(std::uint64_t seed, Time lo, Time hi) {
  if (lo == 0 || hi < lo) throw Error(ErrorCode::InvalidArgument, "random delay range needs 0 < lo <= hi");
  DelayModel m;
  m.mode_ = DelayMode::RandomPerGate;
  m.seed_ = seed;
  m.lo_ = lo;
  m.hi_ = hi;
  return m;
}

DelayModel DelayModel::load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open delay table " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, path + ": expected object");
  std::map<GateKind, Time> delays;
  bool calibrated = false;
  for (const auto& [key, val] : j.items()) {
    if (key == "unit") {
      calibrated = val.is_string() && val.get<std::string>() == "ns";
      continue;
    }
    const auto kind = parse_gate_kind(key);
    if (!kind) throw Error(ErrorCode::ParseError, path + ": unknown gate kind '" + key + "'");
    if (!val.is_number_unsigned()) throw Error(ErrorCode::ParseError, path + "/" + key + ": expected positive integer");
    delays[*kind] = val.get<Time>();
  }
  return table(std::move(delays), calibrated);
}

DelayModel DelayModel::parse(std::string_view text, std::uint64_t seed) {
  if (text == "unit") return unit();
  if (text.starts_with("random")) {
    Time lo = kDefaultRandomLo, hi = kDefaultRandomHi;
    if (text.size() > 6) {
      if (text[6] != ':') throw Error(ErrorCode::InvalidArgument, "bad delay model '" + std::string(text) + "'");
      std::string range(text.substr(7));
      std::replace(range.begin(), range.end(), ',', ' ');
      std::istringstream is(range);
      if (!(is >> lo >> hi)) throw Error(ErrorCode::InvalidArgument, "bad random range '" + std::string(text) + "'");
    }
    return random(seed, lo, hi);
  }
  if (text.starts_with("table:")) return load_table(std::string(text.substr(6)));
  throw Error(ErrorCode::InvalidArgument, "unknown delay model '" + std::string(text) + "'");
}

DelayModel DelayModel::from_json(const nlohmann::ordered_json& j) {
  DelayModel m;
  try {
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "random") {
      m = random(j.at("seed").get<std::uint64_t>(), j.at("lo").get<Time>(), j.at("hi").get<Time>());
    } else if (mode == "table") {
      std::map<GateKind, Time> t;
      for (const auto& [key, val] : j.at("delays").items()) {
        const auto kind = parse_gate_kind(key);
        if (!kind) throw Error(ErrorCode::ParseError, "unknown gate kind '" + key + "'");
        t[*kind] = val.get<Time>();
      }
      m = table(std::move(t), j.value("unit", "abstract") == "ns");
    } else if (mode != "unit") {
      throw Error(ErrorCode::ParseError, "unknown delay mode '" + mode + "'");
    }
    if (j.contains("overrides")) {
      for (const auto& [key, val] : j["overrides"].items()) {
        m.override_gate(static_cast<GateId>(std::stol(key)), val.get<Time>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("delay model: ") + e.what());
  } catch (const std::logic_error& e) {
    throw Error(ErrorCode::ParseError, std::string("delay model: ") + e.what());
  }
  return m;
}

DelayModel& DelayModel::override_gate(GateId gate, Time delay) {
  if (delay == 0) throw Error(ErrorCode::InvalidArgument, "gate delay must be > 0");
  overrides_[gate] = delay;
  return *this;
}

Time DelayModel::delay(const Gate& g) const {
  if (auto it = overrides_.find(g.id); it != overrides_.end()) return it->second;
  switch (mode_) {
    case DelayMode::Unit: return 1;
    case DelayMode::FixedTable: {
      auto it = table_.find(g.kind);
      if (it == table_.end()) {
        throw Error(ErrorCode::InvalidArgument, "delay table has no entry for " + std::string(to_string(g.kind)));
      }
      return it->second;
    }
    case DelayMode::RandomPerGate: {
      std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                        static_cast<std::uint32_t>(g.id)};
      std::mt19937_64 gen(seq);
      return lo_ + gen() % (hi_ - lo_ + 1);
    }
  }
  return 1;
}

Time DelayModel::max_delay(const Netlist& nl) const {
  Time best = 1;
  for (const auto& g : nl.gates()) best = std::max(best, delay(g));
  return best;
}

std::string DelayModel::describe() const {
  std::string s;
  switch (mode_) {
    case DelayMode::Unit: s = "unit"; break;
    case DelayMode::RandomPerGate:
      s = "random:" + std::to_string(lo_) + "," + std::to_string(hi_) + "@" + std::to_string(seed_);
      break;
    case DelayMode::FixedTable: {
      s = "table:{";
      bool first = true;
      for (const auto& [k, d] : table_) {
        s += (first ? "" : ",") + std::string(to_string(k)) + "=" + std::to_string(d);
        first = false;
      }
      s += "}";
      break;
    }
  }
  if (!overrides_.empty()) s += "+" + std::to_string(overrides_.size()) + "overrides";
  return s;
}

nlohmann::ordered_json DelayModel::to_json() const {
  nlohmann::ordered_json j;
  switch (mode_) {
    case DelayMode::Unit: j["mode"] = "unit"; break;
    case DelayMode::FixedTable: {
      j["mode"] = "table";
      nlohmann::ordered_json t = nlohmann::ordered_json::object();
      for (const auto& [k, d] : table_) t[std::string(to_string(k))] = d;
      j["delays"] = std::move(t);
      j["unit"] = calibrated_ ? "ns" : "abstract";
      break;
    }
    case DelayMode::RandomPerGate:
      j["mode"] = "random";
      j["seed"] = seed_;
      j["lo"] = lo_;
      j["hi"] = hi_;
      break;
  }
  if (!overrides_.empty()) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (const auto& [g, d] : overrides_) o[std::to_string(g)] = d;
    j["overrides"] = std::move(o);
  }
  return j;
}

}  // namespace qdi
