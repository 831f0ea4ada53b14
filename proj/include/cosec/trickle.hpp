#pragma once

#include <cstdint>

#include "cosec/rng.hpp"
#include "cosec/types.hpp"

namespace cosec {

struct TrickleConfig {
  // 2^12 ms and 8 doublings: the "4 s" minimum and "17.5 min" maximum DIO
  // intervals of a stock RPL stack.
  TimeMs i_min = 4096;
  int max_doublings = 8;
  int redundancy_k = 10;

  TimeMs i_max() const { return i_min << max_doublings; }
  void validate() const;
  friend bool operator==(const TrickleConfig&, const TrickleConfig&) = default;
};

/// Trickle timer: one transmission opportunity at a random point in the
/// second half of each interval, suppressed once k consistent messages were
/// heard; the interval doubles up to the maximum and resets to i_min on
/// inconsistency.
class TrickleTimer {
 public:
  explicit TrickleTimer(TrickleConfig config = {});

  void start(TimeMs now, Rng& rng);
  /// Returns true when the timer was (re)started; a running timer already at
  /// i_min is left alone.
  bool reset(TimeMs now, Rng& rng);
  void stop();

  void hear_consistent() { ++counter_; }

  /// Handles the deadline reported by next_deadline(). Returns true when a DIO
  /// should be transmitted now.
  bool on_timer(TimeMs now, Rng& rng);

  bool running() const { return running_; }
  TimeMs next_deadline() const { return fired_ ? interval_end_ : fire_at_; }
  TimeMs current_interval() const { return interval_; }
  TimeMs interval_start() const { return interval_start_; }
  TimeMs fire_time() const { return fire_at_; }
  int counter() const { return counter_; }
  /// Changes whenever a new interval is started; lets the scheduler drop
  /// timer events that belong to a superseded interval.
  std::uint64_t generation() const { return generation_; }
  const TrickleConfig& config() const { return config_; }

 private:
  void begin_interval(TimeMs now, Rng& rng);

  TrickleConfig config_;
  bool running_ = false;
  bool fired_ = false;
  TimeMs interval_ = 0;
  TimeMs interval_start_ = 0;
  TimeMs interval_end_ = 0;
  TimeMs fire_at_ = 0;
  int counter_ = 0;
  std::uint64_t generation_ = 0;
};

}  // namespace cosec
