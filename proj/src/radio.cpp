#include "cosec/radio.hpp"

#include <algorithm>
#include <stdexcept>

namespace cosec {

void RadioConfig::validate() const {
  if (!(tx_range > 0.0)) throw std::invalid_argument("radio.tx_range_m: must be > 0");
  if (!(base_loss >= 0.0 && base_loss < 1.0))
    throw std::invalid_argument("radio.base_loss: must be in [0, 1)");
  if (congestion_window <= 0) throw std::invalid_argument("radio.congestion_window_ms: must be > 0");
  if (capacity_per_window < 1) throw std::invalid_argument("radio.capacity_per_window: must be >= 1");
  if (airtime_per_msg <= 0) throw std::invalid_argument("radio.airtime_ms: must be > 0");
  if (unicast_airtime_min <= 0 || unicast_airtime_min > airtime_per_msg)
    throw std::invalid_argument("radio.unicast_airtime_min_ms: must be in (0, airtime_ms]");
  if (retry_backoff_min < 0 || retry_backoff_max < retry_backoff_min)
    throw std::invalid_argument("radio.retry_backoff_ms: need 0 <= min <= max");
  if (probe_timeout <= 0) throw std::invalid_argument("radio.probe_timeout_ms: must be > 0");
}

RadioMedium::RadioMedium(RadioConfig config) : config_(config) { config_.validate(); }

void RadioMedium::expire(TimeMs now) {
  while (!recent_.empty() && recent_.front().t <= now - config_.congestion_window) {
    recent_.pop_front();
  }
}

int RadioMedium::load_at(Vec2 position, TimeMs now) const {
  int n = 0;
  for (const Transmission& tx : recent_) {
    if (tx.t > now - config_.congestion_window && tx.t <= now && in_range(tx.position, position)) ++n;
  }
  return n;
}

void RadioMedium::occupy(Vec2 position, TimeMs t) { recent_.push_back({t, position}); }

std::vector<Delivery> RadioMedium::deliver(Vec2 sender_position, std::span<const Receiver> receivers,
                                           TimeMs now, Rng& rng) {
  expire(now);
  recent_.push_back({now, sender_position});

  std::vector<Delivery> out;
  out.reserve(receivers.size());
  for (const Receiver& r : receivers) {
    if (!in_range(sender_position, r.position)) {
      out.push_back(Delivery::kLost);
      continue;
    }
    if (config_.base_loss > 0.0 && rng.bernoulli(config_.base_loss)) {
      out.push_back(Delivery::kLost);
      continue;
    }
    if (config_.congestion == CongestionModel::kAirtime) {
      const int load = load_at(r.position, now);
      if (load > config_.capacity_per_window) {
        const double excess = static_cast<double>(load - config_.capacity_per_window);
        const double p = std::min(1.0, excess / config_.capacity_per_window);
        if (rng.bernoulli(p)) {
          out.push_back(Delivery::kLost);
          continue;
        }
      }
    }
    out.push_back(Delivery::kDelivered);
  }
  return out;
}

}  // namespace cosec
