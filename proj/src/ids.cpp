#include "cosec/ids.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "cosec/outlier.hpp"

namespace cosec {

namespace {
constexpr TimeMs kNoGap = std::numeric_limits<TimeMs>::max();
}

void IdsConfig::validate() const {
  if (safe_interval <= 0) throw std::invalid_argument("ids.safe_interval_ms: must be > 0");
  if (replay_margin < 0) throw std::invalid_argument("ids.replay_margin_ms: must be >= 0");
  if (block_threshold < 1) throw std::invalid_argument("ids.block_threshold: must be >= 1");
  if (!(tuning > 0.0)) throw std::invalid_argument("ids.tuning: must be > 0");
  if (node_max < 1) throw std::invalid_argument("ids.node_max: must be >= 1");
  if (activation_delay < 0) throw std::invalid_argument("ids.activation_s: must be >= 0");
  if (check_period <= 0) throw std::invalid_argument("ids.check_period_s: must be > 0");
}

IdsState::IdsState(IdsConfig config)
    : config_(config), neighbors_(config.node_max), blacklist_(config.node_max) {
  config_.validate();
}

void IdsState::init_tables() {
  clear_tables();
  active_ = false;
  last_activation_.reset();
}

void IdsState::clear_tables() {
  std::fill(neighbors_.begin(), neighbors_.end(), NeighborEntry{});
  std::fill(blacklist_.begin(), blacklist_.end(), BlacklistEntry{});
  neighbor_count_ = 0;
  blacklist_count_ = 0;
  initialized_ = true;
  neighbor_overflows_ = 0;
  blacklist_overflows_ = 0;
}

std::optional<std::size_t> IdsState::find_neighbor(NodeId id) const {
  for (std::size_t i = 0; i < neighbors_.size(); ++i) {
    if (neighbors_[i].from == id) return i;
  }
  return std::nullopt;
}

const BlacklistEntry* IdsState::find_blacklisted(NodeId id) const {
  for (std::size_t i = 0; i < blacklist_count_; ++i) {
    if (blacklist_[i].address == id) return &blacklist_[i];
  }
  return nullptr;
}

bool IdsState::is_blocked(NodeId id) const {
  const BlacklistEntry* e = find_blacklisted(id);
  return e != nullptr && e->blocked;
}

DioVerdict IdsState::process_dio(NodeId src, TimeMs now) {
  DioVerdict verdict;
  // Lazy initialization leaves the check scheduler alone.
  if (!initialized_) clear_tables();

  // Early detection: permanently blocked senders are dropped untouched.
  if (is_blocked(src)) {
    verdict.action = DioAction::kDiscardBlocked;
    return verdict;
  }

  if (auto slot = find_neighbor(src)) {
    NeighborEntry& e = neighbors_[*slot];
    e.t_previous = e.t_recent;
    e.t_recent = now;
    ++e.dio_count;
    e.min_gap = std::min(e.min_gap, e.t_recent - e.t_previous);
  } else {
    auto empty = std::find_if(neighbors_.begin(), neighbors_.end(),
                              [](const NeighborEntry& n) { return !n.live(); });
    if (empty == neighbors_.end()) {
      ++neighbor_overflows_;
      verdict.table_overflow = true;
    } else {
      // A fresh slot carries t_recent == 0, so the first gap spans the whole
      // run so far and a new neighbor cannot pass the safe-interval test.
      empty->from = src;
      empty->t_previous = empty->t_recent;
      empty->t_recent = now;
      empty->dio_count += 1;
      empty->min_gap = empty->t_recent - empty->t_previous;
      ++neighbor_count_;
    }
  }

  if (active_) {
    CheckResult r = check_malicious(now);
    active_ = false;
    verdict.checked = true;
    verdict.newly_suspected = std::move(r.suspected);
    verdict.newly_blocked = std::move(r.blocked);
  }
  return verdict;
}

CheckResult IdsState::check_malicious(TimeMs /*now*/) {
  CheckResult result;

  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < neighbors_.size(); ++i) {
    if (neighbors_[i].live()) live.push_back(i);
  }
  if (live.empty()) return result;

  // Order whole records by count; slot indices keep the association intact.
  if (live.size() > 1) {
    std::stable_sort(live.begin(), live.end(), [this](std::size_t a, std::size_t b) {
      return neighbors_[a].dio_count < neighbors_[b].dio_count;
    });
  }

  std::vector<std::uint32_t> counts;
  counts.reserve(live.size());
  for (std::size_t slot : live) counts.push_back(neighbors_[slot].dio_count);
  const QuartileSummary qs =
      compute_quartiles(std::span<const std::uint32_t>(counts), config_.tuning);

  const TimeMs sigma = config_.effective_safe_interval();
  for (std::size_t slot : live) {
    const NeighborEntry& e = neighbors_[slot];
    if (!(static_cast<double>(e.dio_count) > qs.upper_limit)) continue;
    const TimeMs gap =
        config_.gap_rule == GapRule::kLastGap ? e.t_recent - e.t_previous : e.min_gap;
    if (gap > sigma) continue;

    const NodeId subject = e.from;
    auto it = std::find_if(blacklist_.begin(), blacklist_.begin() + blacklist_count_,
                           [subject](const BlacklistEntry& b) { return b.address == subject; });
    if (it != blacklist_.begin() + blacklist_count_) {
      // Blocked senders never regain a neighbor slot, so this entry is a
      // suspicion still below the threshold.
      ++it->detection_count;
      if (it->detection_count >= config_.block_threshold) {
        it->blocked = true;
        result.blocked.push_back(subject);
        remove_neighbor_entry(slot);
      } else {
        result.suspected.push_back(subject);
      }
    } else if (blacklist_count_ < blacklist_.size()) {
      BlacklistEntry& b = blacklist_[blacklist_count_++];
      b.address = subject;
      b.detection_count = 1;
      b.blocked = false;
      if (config_.block_threshold == 1) {
        b.blocked = true;
        result.blocked.push_back(subject);
        remove_neighbor_entry(slot);
      } else {
        result.suspected.push_back(subject);
      }
    } else {
      ++blacklist_overflows_;
      result.untracked.push_back(subject);
    }
  }

  if (config_.gap_rule == GapRule::kMinGapInWindow) {
    for (NeighborEntry& e : neighbors_) {
      if (e.live()) e.min_gap = kNoGap;
    }
  }
  return result;
}

void IdsState::remove_neighbor_entry(std::size_t slot) {
  if (slot >= neighbors_.size()) throw std::out_of_range("bad slot");
  if (neighbors_[slot].live()) --neighbor_count_;
  neighbors_[slot] = NeighborEntry{};
}

void IdsState::tick(TimeMs now) {
  if (now < config_.activation_delay) return;
  if (!last_activation_ || now - *last_activation_ >= config_.check_period) {
    active_ = true;
    last_activation_ = now;
  }
}

std::string IdsState::snapshot() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["initialized"] = initialized_;
  j["active"] = active_;
  j["neighbor_count"] = neighbor_count_;
  j["blacklist_count"] = blacklist_count_;
  j["neighbor_overflows"] = neighbor_overflows_;
  j["blacklist_overflows"] = blacklist_overflows_;
  ordered_json nt = ordered_json::array();
  for (std::size_t i = 0; i < neighbors_.size(); ++i) {
    const NeighborEntry& e = neighbors_[i];
    if (!e.live()) continue;
    ordered_json row;
    row["slot"] = i;
    row["from"] = raw(e.from);
    row["t_previous"] = e.t_previous;
    row["t_recent"] = e.t_recent;
    row["dio_count"] = e.dio_count;
    nt.push_back(std::move(row));
  }
  j["neighbors"] = nt;
  ordered_json bl = ordered_json::array();
  for (std::size_t i = 0; i < blacklist_count_; ++i) {
    const BlacklistEntry& b = blacklist_[i];
    ordered_json row;
    row["address"] = raw(b.address);
    row["detection_count"] = b.detection_count;
    row["blocked"] = b.blocked;
    bl.push_back(std::move(row));
  }
  j["blacklist"] = bl;
  return j.dump(2);
}

}  // namespace cosec
