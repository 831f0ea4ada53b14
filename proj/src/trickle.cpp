#include "cosec/trickle.hpp"

#include <algorithm>
#include <stdexcept>

namespace cosec {

void TrickleConfig::validate() const {
  if (i_min < 2) throw std::invalid_argument("rpl.dio_min_interval_ms: must be >= 2");
  if (max_doublings < 0 || max_doublings > 30)
    throw std::invalid_argument("rpl.dio_doublings: must be in [0, 30]");
  if (redundancy_k < 1) throw std::invalid_argument("rpl.dio_redundancy: must be >= 1");
}

TrickleTimer::TrickleTimer(TrickleConfig config) : config_(config) { config_.validate(); }

void TrickleTimer::begin_interval(TimeMs now, Rng& rng) {
  interval_start_ = now;
  interval_end_ = now + interval_;
  fire_at_ = now + interval_ / 2 + rng.uniform_int(0, interval_ / 2 - 1);
  fired_ = false;
  counter_ = 0;
  ++generation_;
}

void TrickleTimer::start(TimeMs now, Rng& rng) {
  running_ = true;
  interval_ = config_.i_min;
  begin_interval(now, rng);
}

bool TrickleTimer::reset(TimeMs now, Rng& rng) {
  if (running_ && interval_ == config_.i_min) return false;
  start(now, rng);
  return true;
}

void TrickleTimer::stop() {
  running_ = false;
  ++generation_;
}

bool TrickleTimer::on_timer(TimeMs now, Rng& rng) {
  if (!running_) return false;
  if (!fired_) {
    if (now < fire_at_) return false;
    fired_ = true;
    return counter_ < config_.redundancy_k;
  }
  if (now < interval_end_) return false;
  interval_ = std::min(interval_ * 2, config_.i_max());
  begin_interval(now, rng);
  return false;
}

}  // namespace cosec
