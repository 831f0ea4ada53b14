#include "cosec/outlier.hpp"

#include <stdexcept>

namespace cosec {

double sorted_median(std::span<const double> sorted) {
  if (sorted.empty()) throw std::invalid_argument("empty sample");
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

QuartileSummary compute_quartiles(std::span<const double> values, double delta) {
  if (values.empty()) throw std::invalid_argument("empty sample");

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  QuartileSummary qs;
  qs.median = sorted_median(sorted);
  if (n == 1) {
    qs.q1 = qs.q3 = sorted.front();
  } else {
    const std::size_t half = n / 2;
    const std::span<const double> all(sorted);
    qs.q1 = sorted_median(all.first(half));
    qs.q3 = sorted_median(all.last(half));
  }
  qs.iqr = qs.q3 - qs.q1;
  qs.upper_limit = qs.q3 + delta * qs.iqr;
  qs.lower_limit = qs.q1 - delta * qs.iqr;
  return qs;
}

QuartileSummary compute_quartiles(std::span<const std::uint32_t> counts, double delta) {
  std::vector<double> values(counts.begin(), counts.end());
  return compute_quartiles(std::span<const double>(values), delta);
}

}  // namespace cosec
