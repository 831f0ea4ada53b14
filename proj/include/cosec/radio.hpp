#pragma once

// Unit-disk propagation with independent loss and an airtime congestion
// window, plus the duty-cycled MAC timings the engine uses.

#include <deque>
#include <span>
#include <vector>

#include "cosec/rng.hpp"
#include "cosec/types.hpp"

namespace cosec {

enum class CongestionModel { kNone, kAirtime };

struct RadioConfig {
  double tx_range = 50.0;  // meters
  double base_loss = 0.0;
  CongestionModel congestion = CongestionModel::kAirtime;
  TimeMs congestion_window = 100;
  int capacity_per_window = 10;

  // A broadcast strobes for a full wake-up interval of the duty-cycled MAC.
  TimeMs airtime_per_msg = 125;
  // A successful unicast lands somewhere in the receiver's wake-up phase.
  TimeMs unicast_airtime_min = 4;
  TimeMs retry_backoff_min = 125;
  TimeMs retry_backoff_max = 375;
  // How long a node waits on an unanswered link probe.
  TimeMs probe_timeout = 500;

  void validate() const;
  friend bool operator==(const RadioConfig&, const RadioConfig&) = default;
};

enum class Delivery { kDelivered, kLost };

struct Receiver {
  NodeId id;
  Vec2 position;
};

class RadioMedium {
 public:
  explicit RadioMedium(RadioConfig config);

  const RadioConfig& config() const { return config_; }

  bool in_range(Vec2 a, Vec2 b) const { return distance(a, b) <= config_.tx_range; }

  /// Registers one transmission at `now` and decides delivery for each
  /// receiver. `now` must not decrease between calls.
  std::vector<Delivery> deliver(Vec2 sender_position, std::span<const Receiver> receivers,
                                TimeMs now, Rng& rng);

  /// Registers channel use that delivers nothing, such as the repeated strobes
  /// of an unanswered unicast. `t` may lie ahead of the current time.
  void occupy(Vec2 position, TimeMs t);

  /// Transmissions audible at `position` within the window ending at `now`.
  int load_at(Vec2 position, TimeMs now) const;

 private:
  struct Transmission {
    TimeMs t;
    Vec2 position;
  };

  void expire(TimeMs now);

  RadioConfig config_;
  std::deque<Transmission> recent_;
};

}  // namespace cosec
