#pragma once

// Scenario and experiment descriptions, and their YAML loader.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cosec/attacker.hpp"
#include "cosec/ids.hpp"
#include "cosec/mobility.hpp"
#include "cosec/radio.hpp"
#include "cosec/rpl.hpp"

namespace cosec {

enum class Mode {
  kBaseline,  // no attacker, no IDS
  kAttack,    // attackers, no IDS
  kCosec,     // attackers, IDS on every legitimate node
  kIdsOnly,   // IDS without attackers (false-positive studies)
};

std::string_view mode_name(Mode mode);
Mode parse_mode(std::string_view text);
std::string_view mobility_name(MobilityModel model);

enum class TopologyKind { kRandom, kExplicit };

struct TopologyConfig {
  TopologyKind kind = TopologyKind::kRandom;
  // Explicit layout: gateway first, then sensors, then attackers.
  std::vector<Vec2> positions;
  int max_attempts = 1000;  // random layouts are redrawn until connected
  friend bool operator==(const TopologyConfig&, const TopologyConfig&) = default;
};

struct TrafficConfig {
  TimeMs data_interval = 60'000;
  std::uint32_t data_size = 30;  // bytes
  TimeMs data_start = 60'000;    // first packet lands in [start, start + interval)
  std::size_t queue_capacity = 16;
  friend bool operator==(const TrafficConfig&, const TrafficConfig&) = default;
};

struct ScenarioConfig {
  std::string name = "scenario";
  TimeMs duration = 1'800'000;
  std::uint32_t n_sensors = 16;
  std::uint32_t n_attackers = 4;
  bool attack_enabled = true;
  bool ids_enabled = false;
  TopologyConfig topology;
  MobilityConfig mobility;  // also holds the deployment area
  RadioConfig radio;
  AttackerConfig attacker;
  IdsConfig ids;
  RplConfig rpl;
  TrafficConfig traffic;
  std::vector<TimeMs> global_repairs;  // scripted root repairs

  std::uint32_t node_count() const { return 1 + n_sensors + (attack_enabled ? n_attackers : 0); }
  ScenarioConfig with_mode(Mode mode) const;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

struct ExperimentConfig {
  ScenarioConfig base;
  std::vector<Mode> modes{Mode::kBaseline, Mode::kAttack, Mode::kCosec};
  std::vector<MobilityModel> mobilities{MobilityModel::kStatic, MobilityModel::kRandomWaypoint};
  std::vector<TimeMs> replay_intervals{1000};
  std::uint32_t replications = 10;
  std::vector<std::uint64_t> seeds;  // empty: 1..replications

  std::vector<std::uint64_t> run_seeds() const;
  void validate() const;
};

/// Parses YAML text. Unknown keys and bad values throw std::invalid_argument
/// naming the field.
ExperimentConfig parse_experiment(std::string_view yaml_text);
ExperimentConfig load_experiment(const std::filesystem::path& path);

}  // namespace cosec
