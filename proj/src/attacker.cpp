#include "cosec/attacker.hpp"

#include <stdexcept>

namespace cosec {

void AttackerConfig::validate() const {
  if (replay_interval <= 0) throw std::invalid_argument("attacker.replay_interval_s: must be > 0");
  if (attack_start < 0) throw std::invalid_argument("attacker.attack_start_s: must be >= 0");
}

Attacker::Attacker(NodeId id, AttackerConfig config) : id_(id), config_(config) { config_.validate(); }

void Attacker::on_overhear(const DioMessage& dio, double distance) {
  if (launched_ || dio.src == id_ || dio.rank >= kInfiniteRank) return;
  if (!captured_) {
    captured_ = dio;
    captured_distance_ = distance;
    return;
  }
  if (config_.capture == CapturePolicy::kStrongest && distance < captured_distance_) {
    captured_ = dio;
    captured_distance_ = distance;
  }
}

std::optional<DioMessage> Attacker::step(TimeMs now) {
  if (now < config_.attack_start || !captured_) return std::nullopt;
  launched_ = true;
  ++replays_;
  DioMessage replay = *captured_;
  replay.src = id_;
  return replay;
}

}  // namespace cosec
