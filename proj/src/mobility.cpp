#include "cosec/mobility.hpp"

#include <stdexcept>

namespace cosec {

void MobilityConfig::validate() const {
  if (!(speed_min > 0.0)) throw std::invalid_argument("mobility.speed_min_mps: must be > 0");
  if (speed_max < speed_min) throw std::invalid_argument("mobility.speed_max_mps: must be >= speed_min_mps");
  if (!(width > 0.0) || !(height > 0.0)) throw std::invalid_argument("mobility.area: must be positive");
  if (pause < 0) throw std::invalid_argument("mobility.pause_s: must be >= 0");
  if (step <= 0) throw std::invalid_argument("mobility.step_ms: must be > 0");
}

void start_waypoint(MobileState& node, const MobilityConfig& config, Rng& rng) {
  node.waypoint = {rng.uniform(0.0, config.width), rng.uniform(0.0, config.height)};
  node.speed = rng.uniform(config.speed_min, config.speed_max);
  node.pause_left = 0;
}

void move(std::span<MobileState> nodes, TimeMs dt, const MobilityConfig& config, Rng& rng) {
  if (config.model == MobilityModel::kStatic) return;
  for (MobileState& n : nodes) {
    if (!n.mobile) continue;
    double remaining = to_seconds(dt);
    n.velocity = {};
    while (remaining > 0.0) {
      if (n.pause_left > 0) {
        const double p = to_seconds(n.pause_left);
        if (p >= remaining) {
          n.pause_left -= seconds(remaining);
          remaining = 0.0;
          break;
        }
        remaining -= p;
        n.pause_left = 0;
      }
      const double d = distance(n.position, n.waypoint);
      const double reach = n.speed * remaining;
      if (reach >= d) {
        n.position = n.waypoint;
        remaining -= d / n.speed;
        start_waypoint(n, config, rng);
        n.pause_left = config.pause;
      } else {
        const double ux = (n.waypoint.x - n.position.x) / d;
        const double uy = (n.waypoint.y - n.position.y) / d;
        n.position.x += ux * reach;
        n.position.y += uy * reach;
        n.velocity = {ux * n.speed, uy * n.speed};
        remaining = 0.0;
      }
    }
  }
}

}  // namespace cosec
