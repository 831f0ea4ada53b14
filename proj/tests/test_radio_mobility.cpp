#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <stdexcept>
#include <vector>

#include "cosec/mobility.hpp"
#include "cosec/radio.hpp"
#include "cosec/rng.hpp"
#include "support/oracle.hpp"

using namespace cosec;

TEST_CASE("rng streams are independent and reproducible") {
  Rng a(7, "radio");
  Rng b(7, "radio");
  Rng c(7, "mobility");
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    differs |= x != c.uniform();
  }
  CHECK(differs);
  CHECK(stream_seed(7, "radio") != stream_seed(8, "radio"));
}

TEST_CASE("uniform_int covers its closed range") {
  Rng r(1, "x");
  std::set<std::int64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = r.uniform_int(-2, 3);
    CHECK(v >= -2);
    CHECK(v <= 3);
    seen.insert(v);
  }
  CHECK(seen.size() == 6);
  CHECK(r.uniform_int(5, 5) == 5);
}

TEST_CASE("out of range is lost, in range on a clean channel is delivered") {
  RadioConfig c;
  c.congestion = CongestionModel::kNone;
  RadioMedium m(c);
  Rng rng(1, "radio");
  const std::vector<Receiver> rx{{node_id(1), {49.9, 0}}, {node_id(2), {50.0, 0}}, {node_id(3), {50.1, 0}}};
  const auto d = m.deliver({0, 0}, rx, 0, rng);
  CHECK(d == std::vector<Delivery>{Delivery::kDelivered, Delivery::kDelivered, Delivery::kLost});
}

TEST_CASE("reachability is symmetric") {
  RadioMedium m(RadioConfig{});
  cosec::testing::Gen gen(5);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 a{gen.real(0, 150), gen.real(0, 150)};
    const Vec2 b{gen.real(0, 150), gen.real(0, 150)};
    CHECK(m.in_range(a, b) == m.in_range(b, a));
  }
}

TEST_CASE("independent loss matches its probability") {
  RadioConfig c;
  c.base_loss = 0.2;
  c.congestion = CongestionModel::kNone;
  RadioMedium m(c);
  Rng rng(2, "radio");
  int lost = 0;
  const std::vector<Receiver> rx{{node_id(1), {10, 0}}};
  for (int i = 0; i < 20'000; ++i) lost += m.deliver({0, 0}, rx, i, rng)[0] == Delivery::kLost;
  CHECK(lost / 20'000.0 == doctest::Approx(0.2).epsilon(0.05));
}

TEST_CASE("congestion drops frames once the window is over capacity") {
  RadioConfig c;
  c.capacity_per_window = 5;
  c.congestion_window = 100;
  RadioMedium m(c);
  Rng rng(3, "radio");
  const std::vector<Receiver> rx{{node_id(1), {10, 0}}};
  for (int i = 0; i < 5; ++i) CHECK(m.deliver({0, 0}, rx, 10, rng)[0] == Delivery::kDelivered);
  CHECK(m.load_at({10, 0}, 10) == 5);
  int lost = 0;
  for (int i = 0; i < 20; ++i) lost += m.deliver({0, 0}, rx, 20, rng)[0] == Delivery::kLost;
  CHECK(lost >= 15);
  // The window slides: old transmissions stop counting.
  CHECK(m.load_at({10, 0}, 200) == 0);
  CHECK(m.deliver({0, 0}, rx, 200, rng)[0] == Delivery::kDelivered);
}

TEST_CASE("load only counts audible transmissions and future occupancy waits") {
  RadioMedium m(RadioConfig{});
  m.occupy({0, 0}, 50);
  m.occupy({500, 500}, 50);
  CHECK(m.load_at({10, 0}, 40) == 0);
  CHECK(m.load_at({10, 0}, 60) == 1);
}

TEST_CASE("invalid radio configuration") {
  RadioConfig c;
  c.base_loss = 1.0;
  CHECK_THROWS_AS(RadioMedium{c}, std::invalid_argument);
  c = {};
  c.tx_range = 0;
  CHECK_THROWS_AS(RadioMedium{c}, std::invalid_argument);
}

TEST_CASE("static model never moves anything") {
  MobilityConfig c;
  Rng rng(1, "mobility");
  std::vector<MobileState> nodes(3);
  nodes[1].position = {10, 20};
  nodes[1].mobile = true;
  const auto before = nodes;
  for (int i = 0; i < 100; ++i) move(nodes, 1'000, c, rng);
  for (std::size_t i = 0; i < nodes.size(); ++i) CHECK(nodes[i].position == before[i].position);
}

TEST_CASE("random waypoint respects speed and area bounds") {
  MobilityConfig c;
  c.model = MobilityModel::kRandomWaypoint;
  c.pause = 2'000;
  Rng rng(2, "mobility");
  std::vector<MobileState> nodes(10);
  cosec::testing::Gen gen(9);
  for (auto& n : nodes) {
    n.position = {gen.real(0, 150), gen.real(0, 150)};
    n.mobile = true;
    start_waypoint(n, c, rng);
    CHECK(n.speed >= c.speed_min);
    CHECK(n.speed <= c.speed_max);
  }
  nodes[0].mobile = false;
  const Vec2 anchor = nodes[0].position;
  for (int step = 0; step < 3'600; ++step) {
    const auto before = nodes;
    move(nodes, 1'000, c, rng);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      CHECK(distance(before[i].position, nodes[i].position) <= c.speed_max * 1.0 + 1e-9);
      CHECK(nodes[i].position.x >= 0.0);
      CHECK(nodes[i].position.x <= c.width);
      CHECK(nodes[i].position.y >= 0.0);
      CHECK(nodes[i].position.y <= c.height);
    }
  }
  CHECK(nodes[0].position == anchor);
}

TEST_CASE("invalid mobility configuration") {
  MobilityConfig c;
  c.speed_min = 3;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.width = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
