#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace cosec {

/// One named random stream of a run. Streams are derived from the run seed and
/// the stream name only, so adding a stream never shifts the draws of another.
class Rng {
 public:
  Rng(std::uint64_t run_seed, std::string_view stream);

  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t stream_seed(std::uint64_t run_seed, std::string_view stream);

}  // namespace cosec
