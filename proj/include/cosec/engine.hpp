#pragma once

// Discrete-event simulation of one scenario run over virtual milliseconds.
//
// Node ids: 0 is the gateway, 1..n the sensors, n+1..n+m the attackers.
// Events run in (time, sequence) order; all randomness comes from named
// streams of the run seed, so a (scenario, seed) pair always produces the same
// trace.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "cosec/metrics.hpp"
#include "cosec/rpl.hpp"
#include "cosec/scenario.hpp"
#include "cosec/trace.hpp"

namespace cosec {

struct RadioStats {
  std::uint64_t receptions = 0;    // in-range frame arrivals, before loss
  std::uint64_t lost_channel = 0;  // independent or congestion loss
  std::uint64_t lost_busy = 0;     // receiver was transmitting or probing

  double loss_rate() const {
    return receptions == 0 ? 0.0 : static_cast<double>(lost_channel + lost_busy) / static_cast<double>(receptions);
  }
};

struct RunResult {
  Trace trace;
  RunMetrics metrics;
  RadioStats radio;
  std::uint64_t events = 0;
};

class Simulation {
 public:
  /// Validates the scenario and places the nodes; throws std::invalid_argument
  /// or std::runtime_error before any event runs.
  Simulation(const ScenarioConfig& config, std::uint64_t seed);
  ~Simulation();
  Simulation(Simulation&&) noexcept;
  Simulation& operator=(Simulation&&) noexcept;

  /// Executes every event with time <= min(t, duration).
  void run_until(TimeMs t);
  /// Runs to the end of the scenario and hands over the results.
  RunResult finish();

  TimeMs now() const;
  std::size_t node_count() const;
  const RplNode& node(NodeId id) const;
  Vec2 position(NodeId id) const;
  const Trace& trace() const;
  const RadioStats& radio_stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

RunResult run(const ScenarioConfig& config, std::uint64_t seed);

/// Node positions for a run: the gateway at the area centre, sensors redrawn
/// until the unit-disk graph is connected, each attacker redrawn until it
/// hears at least one legitimate node. Sensors and attackers use separate
/// streams, so runs with and without attackers share the sensor layout.
std::vector<Vec2> place_nodes(const ScenarioConfig& config, std::uint64_t seed);

bool connected(std::span<const Vec2> positions, double range);

}  // namespace cosec
