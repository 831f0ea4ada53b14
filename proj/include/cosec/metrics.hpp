#pragma once

// Evaluation metrics computed from a run trace and its attack ground truth.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cosec/trace.hpp"

namespace cosec {

struct AttackerResult {
  NodeId id = kNullNode;
  std::optional<double> frt_s;    // launch to first detection by any node
  std::optional<double> block_s;  // launch to first permanent block by any node
  friend bool operator==(const AttackerResult&, const AttackerResult&) = default;
};

struct RunMetrics {
  std::optional<double> pdr;
  std::optional<double> ae2ed_s;
  std::optional<double> ada;        // every detection (suspicion or block) is an observation
  std::optional<double> ada_block;  // permanent blocks only
  std::vector<AttackerResult> attackers;

  std::uint64_t data_generated = 0;
  std::uint64_t data_sent = 0;  // generated plus retransmissions
  std::uint64_t data_received = 0;
  std::uint64_t retransmissions = 0;
  std::uint64_t dio_sent = 0;
  std::uint64_t dis_sent = 0;
  std::uint64_t dao_sent = 0;
  std::uint64_t replays_sent = 0;
  std::uint64_t probes_sent = 0;
  std::uint64_t loops = 0;
  std::uint64_t parent_switches = 0;
  std::uint64_t true_detections = 0;
  std::uint64_t false_suspicions = 0;  // detections whose subject is legitimate
  std::uint64_t permanent_blocks_legit = 0;
  std::uint64_t permanent_blocks_attacker = 0;

  /// Mean FRT over detected attackers; null when none was detected.
  std::optional<double> mean_frt_s() const;
  /// Attackers that launched but were never detected.
  std::size_t undetected() const;

  friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

std::optional<double> compute_pdr(const Trace& trace);
std::optional<double> compute_ae2ed(const Trace& trace);
std::optional<double> compute_ada(const Trace& trace, bool blocks_only = false);
std::vector<AttackerResult> compute_frt(const Trace& trace);
RunMetrics compute_metrics(const Trace& trace);

/// Mean with a two-sided Student-t confidence interval over the non-null
/// samples.
struct Estimate {
  std::size_t n = 0;
  std::optional<double> mean;
  std::optional<double> half_width;  // needs n >= 2

  std::optional<double> low() const;
  std::optional<double> high() const;
};

Estimate estimate(std::span<const std::optional<double>> samples, double confidence = 0.95);

}  // namespace cosec
