#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace cosec {

/// Virtual simulation time in integer milliseconds.
using TimeMs = std::int64_t;

constexpr TimeMs seconds(double s) { return static_cast<TimeMs>(s * 1000.0 + (s >= 0 ? 0.5 : -0.5)); }
constexpr double to_seconds(TimeMs t) { return static_cast<double>(t) / 1000.0; }

/// Node address. The all-ones value is the null address.
enum class NodeId : std::uint32_t {};

inline constexpr NodeId kNullNode{std::numeric_limits<std::uint32_t>::max()};

constexpr std::uint32_t raw(NodeId id) { return static_cast<std::uint32_t>(id); }
constexpr NodeId node_id(std::uint32_t v) { return NodeId{v}; }

inline std::ostream& operator<<(std::ostream& os, NodeId id) {
  if (id == kNullNode) return os << "null";
  return os << raw(id);
}

inline std::string to_string(NodeId id) {
  return id == kNullNode ? std::string("null") : std::to_string(raw(id));
}

/// RPL rank in dimensionless rank units.
using Rank = std::uint32_t;
inline constexpr Rank kInfiniteRank = 0xFFFF;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double distance(Vec2 a, Vec2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace cosec
