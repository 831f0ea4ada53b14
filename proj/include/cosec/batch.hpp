#pragma once

// Batch execution of an experiment: every scenario variant times every seed,
// run on a worker pool and merged by (variant, seed), then written as CSV and
// plot-data files.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cosec/metrics.hpp"
#include "cosec/scenario.hpp"

namespace cosec {

inline constexpr int kSchemaVersion = 1;

struct Variant {
  Mode mode = Mode::kBaseline;
  MobilityModel mobility = MobilityModel::kStatic;
  std::optional<TimeMs> replay_interval;  // unset for attack-free modes
  ScenarioConfig scenario;

  /// Stable identifier, e.g. "cosec/static/1s".
  std::string key() const;
};

/// Modes x mobility x replay intervals. Attack-free modes do not depend on
/// the replay interval and appear once per mobility setting.
std::vector<Variant> expand(const ExperimentConfig& experiment);

struct RunRecord {
  std::size_t variant = 0;
  std::uint64_t seed = 0;
  RunMetrics metrics;
};

struct BatchOptions {
  std::vector<std::uint64_t> seeds;   // overrides the experiment's seeds
  std::optional<Mode> mode;           // run only this mode
  bool traces = false;                // keep one trace file per run
  unsigned workers = 0;               // 0: hardware concurrency
};

struct BatchResult {
  std::string scenario;
  std::vector<Variant> variants;
  std::vector<std::uint64_t> seeds;
  std::vector<RunRecord> runs;  // ordered by variant, then seed
  std::vector<std::pair<std::string, std::string>> traces;  // file name, contents
};

BatchResult run_batch(const ExperimentConfig& experiment, const BatchOptions& options = {});

std::string runs_csv_header();
std::string runs_csv(const BatchResult& result);
std::string aggregate_csv_header();
std::string aggregate_csv(const BatchResult& result);
std::string pdr_plot(const BatchResult& result);
std::string ae2ed_plot(const BatchResult& result);
std::string ada_plot(const BatchResult& result);
std::string frt_plot(const BatchResult& result);

/// Writes runs.csv, aggregate.csv, the plot files and any traces into
/// `out_dir`. Files are staged next to it first, so a failure leaves the
/// directory untouched.
void write_results(const BatchResult& result, const std::filesystem::path& out_dir);

}  // namespace cosec
