#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "test_support.hpp"

namespace parkroute {
namespace {

using testing::edge;
using testing::make_network;

TEST(Normalize, EndpointsMidpointAndClamp) {
  EXPECT_DOUBLE_EQ(normalize(2.0, 2.0, 7.0), 0.0);
  EXPECT_DOUBLE_EQ(normalize(7.0, 2.0, 7.0), 1.0);
  EXPECT_DOUBLE_EQ(normalize(5.0, 0.0, 10.0), 0.5);
  EXPECT_DOUBLE_EQ(normalize(-3.0, 0.0, 10.0), 0.0);
  EXPECT_DOUBLE_EQ(normalize(12.0, 0.0, 10.0), 1.0);
  EXPECT_THROW(normalize(1.0, 3.0, 3.0), DegenerateBounds);
  EXPECT_THROW(normalize(1.0, 4.0, 3.0), DegenerateBounds);
}

TEST(Normalize, AffineAndIncreasingInsideBounds) {
  Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    const double a = rng.uniform(-50, 50);
    const double b = a + rng.uniform(0.01, 100);
    const double x = rng.uniform(a, b);
    const double y = rng.uniform(a, b);
    const double t = rng.unit();
    EXPECT_NEAR(normalize(t * x + (1 - t) * y, a, b), t * normalize(x, a, b) + (1 - t) * normalize(y, a, b), 1e-12);
    if (x < y) {
      EXPECT_LT(normalize(x, a, b), normalize(y, a, b));
    }
  }
}

TEST(Objectives, DistanceDelegatesAndGrowsWithExtension) {
  const auto& net = testing::city31();
  for (const Route& r : reference_routes()) {
    EXPECT_DOUBLE_EQ(objective_distance(net, r), route_distance(net, r));
  }
  const auto line = make_network("SIP", {edge(0, 1, 1.0), edge(1, 2, 2.0), edge(0, 2, 0.5)});
  EXPECT_GT(objective_distance(line, Route{{0, 1, 2}}), objective_distance(line, Route{{0, 2}}));
}

TEST(Objectives, SpeedIsNegatedSum) {
  const auto one = make_network("SP", {edge(0, 1, 1.0, 40)});
  EXPECT_DOUBLE_EQ(objective_speed(one, Route{{0, 1}}, TimeSlot::Night), -40.0);
  const auto stopped = make_network("SP", {edge(0, 1, 1.0, 0)});
  EXPECT_DOUBLE_EQ(objective_speed(stopped, Route{{0, 1}}, TimeSlot::Night), 0.0);
  const auto& net = testing::city31();
  for (const Route& r : reference_routes()) {
    EXPECT_DOUBLE_EQ(objective_speed(net, r, TimeSlot::Evening), -route_speed_sum(net, r, TimeSlot::Evening));
    EXPECT_LE(objective_speed(net, r, TimeSlot::Evening), 0.0);
  }
  EXPECT_THROW(objective_speed(net, Route{{0, 4}}, TimeSlot::Night), InvalidRoute);
}

TEST(Objectives, AvailabilityDependsOnlyOnTerminalLot) {
  const auto net = make_network("SIP", {edge(0, 1, 1), edge(1, 2, 1), edge(0, 2, 1)},
                                {{2, testing::flat(95.0)}});
  EXPECT_DOUBLE_EQ(objective_availability(net, Route{{0, 2}}, TimeSlot::Night), -95.0);
  EXPECT_DOUBLE_EQ(objective_availability(net, Route{{0, 1, 2}}, TimeSlot::Night), -95.0);
  const auto full = make_network("SP", {edge(0, 1, 1)}, {{1, testing::flat(0.0)}});
  EXPECT_DOUBLE_EQ(objective_availability(full, Route{{0, 1}}, TimeSlot::Night), 0.0);
}

TEST(ComputeBounds, StaticNetworkDerivedRanges) {
  auto e1 = edge(0, 1, 1, 30);
  auto e2 = edge(1, 2, 2, 30);
  auto e3 = edge(2, 3, 3, 30);
  e2.speed_kmh[TimeSlot::Night] = 70;
  const auto net = make_network("SIIP", {e1, e2, e3});
  const auto b = compute_bounds(net);
  EXPECT_EQ(b.distance_km, (Range{0, 6}));
  EXPECT_EQ(b.speed_sum, (Range{0, 130}));
  EXPECT_EQ(b.availability, (Range{0, 100}));
  EXPECT_EQ(compute_bounds(testing::city31()).availability, (Range{0, 100}));
}

TEST(ComputeBounds, ZeroDistanceNetworkStaysNonDegenerate) {
  const auto net = make_network("SP", {Edge{0, 1, 0.0, testing::flat(0.0)}});
  const auto b = compute_bounds(net);
  EXPECT_GT(b.distance_km.hi, b.distance_km.lo);
  EXPECT_GT(b.speed_sum.hi, b.speed_sum.lo);
  const WeightVector w(0.5, 0.25, 0.25);
  EXPECT_NO_THROW(fitness(net, Route{{0, 1}}, TimeSlot::Night, w, b));
}

TEST(ComputeBounds, EveryRouteFallsInsideBounds) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto net = testing::random_toy_network(seed, 3 + seed % 6);
    const auto b = compute_bounds(net);
    for (const auto& nodes : testing::brute_force_routes(net)) {
      const Route r{nodes};
      const double d = objective_distance(net, r);
      EXPECT_GE(d, b.distance_km.lo);
      EXPECT_LE(d, b.distance_km.hi);
      for (TimeSlot slot : kAllSlots) {
        const double s = -objective_speed(net, r, slot);
        EXPECT_GE(s, b.speed_sum.lo);
        EXPECT_LE(s, b.speed_sum.hi);
        const double x = -objective_availability(net, r, slot);
        EXPECT_GE(x, b.availability.lo);
        EXPECT_LE(x, b.availability.hi);
        const double f = fitness(net, r, slot, WeightVector(0.29, 0.30, 0.41), b);
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0);
      }
    }
  }
}

TEST(Fitness, DistanceOnlyWeightsOrderByDistance) {
  const auto net = testing::random_toy_network(4);
  const auto b = compute_bounds(net);
  const WeightVector w(1, 0, 0);
  const auto routes = testing::brute_force_routes(net);
  for (const auto& x : routes) {
    for (const auto& y : routes) {
      const double dx = route_distance(net, Route{x}), dy = route_distance(net, Route{y});
      const double fx = fitness(net, Route{x}, TimeSlot::Morning, w, b);
      const double fy = fitness(net, Route{y}, TimeSlot::Morning, w, b);
      if (dx < dy) {
        EXPECT_LT(fx, fy);
      }
      if (dx == dy) {
        EXPECT_EQ(fx, fy);
      }
    }
  }
}

TEST(Fitness, AvailabilityOnlyWeights) {
  const auto& net = testing::city31();
  const auto b = compute_bounds(net);
  for (const Route& r : reference_routes()) {
    for (TimeSlot slot : kAllSlots) {
      EXPECT_NEAR(fitness(net, r, slot, WeightVector(0, 0, 1), b),
                  1.0 - lot_availability(net, r.back(), slot) / 100.0, 1e-12);
    }
  }
}

TEST(Fitness, NegatedRangeEqualsOneMinusScaledValue) {
  // The literal form: scale -x over [-b, -a].
  const auto& net = testing::city31();
  const auto b = compute_bounds(net);
  const WeightVector w(0.29, 0.30, 0.41);
  for (const Route& r : reference_routes()) {
    const double literal =
        w.distance() * normalize(objective_distance(net, r), b.distance_km.lo, b.distance_km.hi) +
        w.speed() * normalize(objective_speed(net, r, TimeSlot::Night), -b.speed_sum.hi, -b.speed_sum.lo) +
        w.availability() * normalize(objective_availability(net, r, TimeSlot::Night), -100.0, 0.0);
    EXPECT_NEAR(fitness(net, r, TimeSlot::Night, w, b), literal, 1e-12);
    EXPECT_GT(fitness(net, r, TimeSlot::Night, w, b), 0.0);
    EXPECT_LT(fitness(net, r, TimeSlot::Night, w, b), 1.0);
  }
}

TEST(Fitness, LinearInWeights) {
  const auto& net = testing::city31();
  const auto b = compute_bounds(net);
  Rng rng(2);
  auto random_weights = [&] {
    const double x = rng.unit(), y = rng.unit() * (1 - x);
    return WeightVector(x, y, std::max(0.0, 1 - x - y));
  };
  for (int i = 0; i < 100; ++i) {
    const auto u = random_weights();
    const auto v = random_weights();
    const double t = rng.unit();
    const WeightVector mix(t * u.distance() + (1 - t) * v.distance(), t * u.speed() + (1 - t) * v.speed(),
                           t * u.availability() + (1 - t) * v.availability());
    const Route& r = reference_routes()[i % reference_routes().size()];
    const auto slot = kAllSlots[i % kSlotCount];
    EXPECT_NEAR(fitness(net, r, slot, mix, b),
                t * fitness(net, r, slot, u, b) + (1 - t) * fitness(net, r, slot, v, b), 1e-12);
  }
}

TEST(Fitness, RankingSurvivesCommonBoundRescaling) {
  // Widening every range by a per-objective affine map keeps route order
  // when all routes stay in range and weights are fixed.
  const auto net = testing::random_toy_network(9);
  const auto b = compute_bounds(net);
  ObjectiveBounds wider = b;
  wider.distance_km = {b.distance_km.lo - 1.0, b.distance_km.hi * 2.0 + 1.0};
  wider.speed_sum = {b.speed_sum.lo - 5.0, b.speed_sum.hi * 2.0 + 5.0};
  const auto routes = testing::brute_force_routes(net);
  const WeightVector single(0, 1, 0);
  for (const auto& x : routes) {
    for (const auto& y : routes) {
      const bool before = fitness(net, Route{x}, TimeSlot::Evening, single, b) <
                          fitness(net, Route{y}, TimeSlot::Evening, single, b);
      const bool after = fitness(net, Route{x}, TimeSlot::Evening, single, wider) <
                         fitness(net, Route{y}, TimeSlot::Evening, single, wider);
      EXPECT_EQ(before, after);
    }
  }
}

TEST(Fitness, DistanceOnlyMinimumMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto net = testing::random_toy_network(seed);
    const auto b = compute_bounds(net);
    const auto routes = testing::brute_force_routes(net);
    double best_d = 1e300, best_f = 1e300, d_at_best_f = 0;
    for (const auto& nodes : routes) {
      const double d = route_distance(net, Route{nodes});
      const double f = fitness(net, Route{nodes}, TimeSlot::Night, WeightVector(1, 0, 0), b);
      best_d = std::min(best_d, d);
      if (f < best_f) {
        best_f = f;
        d_at_best_f = d;
      }
    }
    EXPECT_DOUBLE_EQ(d_at_best_f, best_d);
  }
}

TEST(WeightVector, Invariants) {
  EXPECT_NO_THROW(WeightVector(0.29, 0.30, 0.41));
  EXPECT_THROW(WeightVector(0.5, 0.5, 0.5), ValidationError);
  EXPECT_THROW(WeightVector(-0.1, 0.6, 0.5), ValidationError);
}

TEST(WeightsFile, LoadAndSchema) {
  const auto w = load_weights(testing::data_path("weights_table1.json"));
  EXPECT_NEAR(w.distance(), 0.29, 1e-12);
  EXPECT_NEAR(w.speed(), 0.30, 1e-12);
  EXPECT_NEAR(w.availability(), 0.41, 1e-12);
  EXPECT_NEAR(w.distance() + w.speed() + w.availability(), 1.0, 1e-12);
  EXPECT_NO_THROW(weights_from_json(nlohmann::json::parse(R"({"distance": 0.2, "speed": 0.3, "availability": 0.5000000005})")));
  EXPECT_THROW(weights_from_json(nlohmann::json::parse(R"({"distance": 0.2, "speed": 0.3, "availability": 0.51})")),
               ValidationError);
  EXPECT_THROW(weights_from_json(nlohmann::json::parse(R"({"distance": 0.2, "speed": 0.3})")), ParseError);
  EXPECT_THROW(weights_from_json(nlohmann::json::parse(R"({"distance": 0.2, "speed": 0.3, "availability": 0.5, "x": 0})")),
               ParseError);
}

}  // namespace
}  // namespace parkroute
