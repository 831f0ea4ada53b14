#pragma once

// Median / quartile / IQR fence routines used by the detector.
//
// Quartiles follow Tukey's exclusive split: Q1 and Q3 are the medians of the
// lower and upper halves of the sorted sample, and for odd lengths the overall
// median belongs to neither half. A single sample is its own median and both
// quartiles.

#include <algorithm>
#include <cstdint>
#include <set>
#include <span>
#include <utility>
#include <vector>

namespace cosec {

struct QuartileSummary {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double iqr = 0.0;
  double upper_limit = 0.0;  // q3 + delta * iqr
  double lower_limit = 0.0;  // q1 - delta * iqr; reported, never used for detection
};

/// Throws std::invalid_argument("empty sample") on empty input.
QuartileSummary compute_quartiles(std::span<const double> values, double delta);
QuartileSummary compute_quartiles(std::span<const std::uint32_t> counts, double delta);

/// Median of an already sorted, non-empty range.
double sorted_median(std::span<const double> sorted);

/// Keys whose count is strictly above the upper fence of all counts.
/// Empty input yields an empty set.
template <typename Key>
std::set<Key> find_outliers(std::span<const std::pair<Key, std::uint32_t>> entries, double delta) {
  std::set<Key> out;
  if (entries.empty()) return out;
  std::vector<double> counts;
  counts.reserve(entries.size());
  for (const auto& e : entries) counts.push_back(static_cast<double>(e.second));
  const QuartileSummary qs = compute_quartiles(std::span<const double>(counts), delta);
  for (const auto& e : entries) {
    if (static_cast<double>(e.second) > qs.upper_limit) out.insert(e.first);
  }
  return out;
}

template <typename Key>
std::set<Key> find_outliers(const std::vector<std::pair<Key, std::uint32_t>>& entries, double delta) {
  return find_outliers<Key>(std::span<const std::pair<Key, std::uint32_t>>(entries), delta);
}

}  // namespace cosec
