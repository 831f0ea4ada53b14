#pragma once

#include <span>

#include "cosec/rng.hpp"
#include "cosec/types.hpp"

namespace cosec {

enum class MobilityModel { kStatic, kRandomWaypoint };

struct MobilityConfig {
  MobilityModel model = MobilityModel::kStatic;
  double speed_min = 1.0;  // m/s
  double speed_max = 2.0;  // m/s
  double width = 150.0;    // m
  double height = 150.0;   // m
  TimeMs pause = 0;
  TimeMs step = 1000;      // position update period

  void validate() const;
  friend bool operator==(const MobilityConfig&, const MobilityConfig&) = default;
};

struct MobileState {
  Vec2 position;
  Vec2 velocity;
  Vec2 waypoint;
  double speed = 0.0;
  TimeMs pause_left = 0;
  bool mobile = false;  // the gateway stays put even in mobile scenarios
};

/// Draws the first waypoint and speed for a mobile node.
void start_waypoint(MobileState& node, const MobilityConfig& config, Rng& rng);

/// Advances every mobile node by `dt` under the configured model.
void move(std::span<MobileState> nodes, TimeMs dt, const MobilityConfig& config, Rng& rng);

}  // namespace cosec
