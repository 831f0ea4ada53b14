#pragma once

// Non-spoofed copycat attacker: keeps one overheard DIO and multicasts it
// unchanged under its own address at a fixed interval. It never joins the
// DODAG and never answers anything.

#include <optional>

#include "cosec/rpl.hpp"
#include "cosec/types.hpp"

namespace cosec {

enum class CapturePolicy {
  kFirstHeard,  // the first legitimate DIO overheard
  kStrongest,   // the DIO from the closest sender heard before the first replay
};

struct AttackerConfig {
  TimeMs replay_interval = 1000;
  TimeMs attack_start = 90'000;
  CapturePolicy capture = CapturePolicy::kFirstHeard;

  void validate() const;
  friend bool operator==(const AttackerConfig&, const AttackerConfig&) = default;
};

class Attacker {
 public:
  Attacker(NodeId id, AttackerConfig config);

  NodeId id() const { return id_; }
  const AttackerConfig& config() const { return config_; }

  /// Offers an overheard DIO; `distance` is to its sender.
  void on_overhear(const DioMessage& dio, double distance);

  /// The replayed DIO due at `now`, if any. Callers invoke it at attack_start
  /// and every replay interval afterwards.
  std::optional<DioMessage> step(TimeMs now);

  const std::optional<DioMessage>& captured() const { return captured_; }
  bool launched() const { return launched_; }
  std::uint64_t replays() const { return replays_; }

 private:
  NodeId id_;
  AttackerConfig config_;
  std::optional<DioMessage> captured_;
  double captured_distance_ = 0.0;
  bool launched_ = false;  // capture is frozen from the first replay on
  std::uint64_t replays_ = 0;
};

}  // namespace cosec
