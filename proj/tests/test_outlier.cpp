#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "cosec/outlier.hpp"
#include "support/oracle.hpp"
#include "support/properties.hpp"

using namespace cosec;
using cosec::testing::Gen;
using cosec::testing::oracle_quartiles;

namespace {

QuartileSummary q(std::vector<double> v, double delta = 1.0) { return compute_quartiles(std::span<const double>(v), delta); }

void check(const QuartileSummary& s, double median, double q1, double q3, double iqr, double ul) {
  CHECK(s.median == median);
  CHECK(s.q1 == q1);
  CHECK(s.q3 == q3);
  CHECK(s.iqr == iqr);
  CHECK(s.upper_limit == ul);
}

std::vector<std::pair<int, std::uint32_t>> keyed(std::vector<std::uint32_t> v) {
  std::vector<std::pair<int, std::uint32_t>> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(static_cast<int>(i), v[i]);
  return out;
}

}  // namespace

TEST_CASE("normal 5-minute column") { check(q({9, 1, 3, 6, 5, 1}), 4, 1, 6, 5, 11); }

TEST_CASE("attack 5-minute column") { check(q({1, 2, 4, 6, 7, 8, 166}), 6, 2, 8, 6, 14); }

TEST_CASE("attack 15-minute column keeps fractional quartiles") {
  check(q({9, 6, 2, 9, 7, 711, 3, 1}), 6.5, 2.5, 9, 6.5, 15.5);
}

TEST_CASE("even column median is the mean of the middle pair") {
  // Sorted 1,1,2,3,8,9,10,12: the middle pair is 3 and 8.
  check(q({12, 1, 9, 10, 8, 2, 3, 1}), 5.5, 1.5, 9.5, 8, 17.5);
}

TEST_CASE("single sample is its own median and quartiles") {
  for (double delta : {0.5, 1.0, 7.0}) check(q({42}, delta), 42, 42, 42, 0, 42);
}

TEST_CASE("lower fence is reported") {
  const QuartileSummary s = q({9, 1, 3, 6, 5, 1});
  CHECK(s.lower_limit == -4);
}

TEST_CASE("delta scales the fence") { CHECK(q({9, 1, 3, 6, 5, 1}, 2.0).upper_limit == 16); }

TEST_CASE("empty sample is an error") {
  CHECK_THROWS_WITH_AS(q({}), "empty sample", std::invalid_argument);
  CHECK_THROWS_WITH_AS(sorted_median(std::span<const double>{}), "empty sample", std::invalid_argument);
}

TEST_CASE("integer counts overload matches the real one") {
  const std::vector<std::uint32_t> c{13, 1, 11, 10, 9, 2, 4, 1};
  const QuartileSummary a = compute_quartiles(std::span<const std::uint32_t>(c), 1.0);
  check(a, 6.5, 1.5, 10.5, 9, 19.5);
}

TEST_CASE("find_outliers flags the replaying neighbor") {
  auto e = keyed({7, 8, 6, 1, 4, 2, 166});
  CHECK(find_outliers(e, 1.0) == std::set<int>{6});
}

TEST_CASE("find_outliers on a quiet table is empty") {
  CHECK(find_outliers(keyed({9, 1, 3, 6, 5, 1}), 1.0).empty());
}

TEST_CASE("equal counts are never outliers") { CHECK(find_outliers(keyed({5, 5, 5, 5, 5}), 1.0).empty()); }

TEST_CASE("empty input gives an empty outlier set") { CHECK(find_outliers(keyed({}), 1.0).empty()); }

TEST_CASE("comparison against the fence is strict") {
  // Q1 1, Q3 3, IQR 2: fence 5 exactly.
  CHECK(find_outliers(keyed({1, 1, 3, 3, 3, 5}), 1.0).empty());
  CHECK(find_outliers(keyed({1, 1, 3, 3, 3, 6}), 1.0) == std::set<int>{5});
}

TEST_CASE("200 random samples agree with the brute-force oracle") {
  Gen gen(20260101);
  for (int c = 0; c < 200; ++c) {
    std::vector<double> v(static_cast<std::size_t>(gen.range(1, 40)));
    for (auto& x : v) x = static_cast<double>(gen.range(0, 500));
    const auto o = oracle_quartiles(v, 1.0);
    const QuartileSummary s = q(v);
    REQUIRE(s.median == o.median);
    REQUIRE(s.q1 == o.q1);
    REQUIRE(s.q3 == o.q3);
    REQUIRE(s.upper_limit == o.upper_limit);
  }
}

TEST_CASE("tables of five or fewer entries never contain an outlier") {
  Gen gen(77);
  for (int c = 0; c < 2000; ++c) {
    std::vector<std::uint32_t> v(static_cast<std::size_t>(gen.range(1, 5)));
    for (auto& x : v) x = static_cast<std::uint32_t>(gen.range(0, 3)) * static_cast<std::uint32_t>(gen.range(0, 1000));
    REQUIRE(find_outliers(keyed(v), 1.0).empty());
  }
  CHECK(find_outliers(keyed({1, 1, 1, 1, 1, 2}), 1.0) == std::set<int>{5});
}

TEST_CASE("permutation, translation and size properties on 1000 cases") {
  const auto failures = cosec::testing::outlier_properties(1000, 4242);
  for (const auto& f : failures) MESSAGE(f);
  CHECK(failures.empty());
}
