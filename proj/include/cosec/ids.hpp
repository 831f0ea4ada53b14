#pragma once

// Copycat (DIO replay) detector. One IdsState lives on each legitimate node and
// is fed every received DIO. Every check period the next DIO reception runs the
// outlier check over the per-neighbor DIO counts. A neighbor whose count is
// above the IQR upper fence and whose inter-DIO gap is within the safe interval
// is suspected. Reaching the block threshold makes the block permanent.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cosec/types.hpp"

namespace cosec {

/// How the safe-interval test measures a neighbor's DIO spacing.
enum class GapRule {
  kLastGap,         // t_recent - t_previous
  kMinGapInWindow,  // smallest gap observed since the previous check
};

struct IdsConfig {
  TimeMs safe_interval = 500;    // sigma
  TimeMs replay_margin = 4500;   // widens sigma to cover fixed 1-4 s replay; 0 = literal sigma
  std::uint32_t block_threshold = 5;  // beta
  double tuning = 1.0;                // delta in Q3 + delta * IQR
  std::size_t node_max = 32;
  TimeMs activation_delay = 120'000;
  TimeMs check_period = 30'000;
  GapRule gap_rule = GapRule::kLastGap;

  TimeMs effective_safe_interval() const { return std::max(safe_interval, replay_margin); }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  friend bool operator==(const IdsConfig&, const IdsConfig&) = default;
};

struct NeighborEntry {
  NodeId from = kNullNode;
  TimeMs t_previous = 0;
  TimeMs t_recent = 0;
  std::uint32_t dio_count = 0;
  TimeMs min_gap = 0;

  bool live() const { return from != kNullNode; }
  friend bool operator==(const NeighborEntry&, const NeighborEntry&) = default;
};

struct BlacklistEntry {
  NodeId address = kNullNode;
  std::uint32_t detection_count = 0;
  bool blocked = false;  // false: suspected, true: permanently blocked
  friend bool operator==(const BlacklistEntry&, const BlacklistEntry&) = default;
};

enum class DioAction { kAccept, kDiscardBlocked };

struct CheckResult {
  std::vector<NodeId> suspected;  // detection recorded, below the block threshold
  std::vector<NodeId> blocked;    // detection count reached the block threshold
  std::vector<NodeId> untracked;  // flagged but the blacklist was full
};

struct DioVerdict {
  DioAction action = DioAction::kAccept;
  std::vector<NodeId> newly_suspected;
  std::vector<NodeId> newly_blocked;
  bool table_overflow = false;  // sender unknown and the neighbor table is full
  bool checked = false;         // the periodic check ran during this call
};

class IdsState {
 public:
  explicit IdsState(IdsConfig config);

  /// Resets both tables, counters and the check scheduler. The first DIO
  /// initializes the tables implicitly but keeps a pending check.
  void init_tables();

  DioVerdict process_dio(NodeId src, TimeMs now);
  CheckResult check_malicious(TimeMs now);

  /// Throws std::out_of_range("bad slot").
  void remove_neighbor_entry(std::size_t slot);

  /// Raises the check-due flag once per check period after activation.
  void tick(TimeMs now);

  const IdsConfig& config() const { return config_; }
  const std::vector<NeighborEntry>& neighbor_table() const { return neighbors_; }
  const std::vector<BlacklistEntry>& blacklist_table() const { return blacklist_; }
  std::size_t neighbor_count() const { return neighbor_count_; }
  std::size_t blacklist_count() const { return blacklist_count_; }
  bool initialized() const { return initialized_; }
  bool active() const { return active_; }
  std::uint64_t neighbor_overflows() const { return neighbor_overflows_; }
  std::uint64_t blacklist_overflows() const { return blacklist_overflows_; }

  std::optional<std::size_t> find_neighbor(NodeId id) const;
  const BlacklistEntry* find_blacklisted(NodeId id) const;
  bool is_blocked(NodeId id) const;

  /// Deterministic JSON rendering of the full state, for golden tests.
  std::string snapshot() const;

  friend bool operator==(const IdsState&, const IdsState&) = default;

 private:
  void clear_tables();

  IdsConfig config_;
  std::vector<NeighborEntry> neighbors_;
  std::vector<BlacklistEntry> blacklist_;
  std::size_t neighbor_count_ = 0;
  std::size_t blacklist_count_ = 0;
  bool initialized_ = false;
  bool active_ = false;
  std::optional<TimeMs> last_activation_;
  std::uint64_t neighbor_overflows_ = 0;
  std::uint64_t blacklist_overflows_ = 0;
};

}  // namespace cosec
