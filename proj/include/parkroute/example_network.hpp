#pragma once

/// @file example_network.hpp
/// @brief Seeded 31-node city map used as the bundled example network.
///
/// Nodes 0 and 1 are start locations, 2..27 are junctions and 28..30 are
/// parking lots. The edge set always contains every consecutive pair of the
/// reference routes below; the remaining topology, distances, speeds and
/// availabilities are drawn from the seed. Speeds drop around the morning and
/// evening peaks and lot availability dips in the 12-4pm slot.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "parkroute/random.hpp"
#include "parkroute/road_network.hpp"

namespace parkroute {

inline constexpr std::size_t kExampleNodeCount = 31;

/// Routes whose edges are guaranteed to exist in every generated network:
/// the six per-slot best routes followed by the worked chromosomes of the
/// initial population, selection, crossover and mutation walkthroughs.
inline const std::vector<Route>& reference_routes() {
  static const std::vector<Route> routes = {
      {{0, 4, 22, 14, 13, 11, 26, 21, 28}},
      {{0, 4, 22, 13, 11, 2, 29}},
      {{0, 3, 4, 22, 13, 25, 20, 28}},
      {{0, 5, 22, 13, 11, 2, 29}},
      {{0, 7, 4, 22, 13, 25, 20, 28}},
      {{0, 5, 22, 13, 11, 2, 17, 21, 28}},
      {{0, 5, 22, 15, 25, 26, 2, 19, 30}},
      {{0, 6, 22, 15, 25, 20, 18, 28}},
      {{0, 8, 7, 23, 3, 6, 22, 13, 25, 11, 2, 29}},
      {{0, 4, 22, 14, 13, 25, 11, 26, 2, 19, 17, 20, 18, 28}},
      {{0, 7, 4, 6, 22, 13, 1, 11, 2, 17, 21, 28}},
      {{0, 3, 6, 22, 15, 1, 11, 26, 21, 28}},
      {{0, 6, 22, 15, 1, 11, 26, 21, 28}},
      {{0, 3, 6, 22, 15, 25, 20, 18, 28}},
      {{0, 4, 6, 22, 15, 25, 20, 18, 28}},
  };
  return routes;
}

/// The six per-slot best routes, in clock order.
inline std::span<const Route> reference_slot_routes() {
  return std::span<const Route>(reference_routes()).first(kSlotCount);
}

/// The five tournament competitors with distinct routes from the selection
/// walkthrough (chromosomes 3 and 4 share a route).
inline std::span<const Route> reference_selection_routes() {
  return std::span<const Route>(reference_routes()).subspan(7, 5);
}

namespace detail {

// Junctions absent from the reference routes, wired in so that every node
// lies on some start-to-lot path.
inline constexpr std::array<std::pair<NodeId, NodeId>, 12> kBackboneEdges = {{
    {1, 9},  {8, 9},   {9, 10},  {10, 12}, {12, 23}, {1, 16},
    {14, 16}, {16, 18}, {24, 25}, {24, 27}, {27, 30}, {19, 27},
}};

inline constexpr std::size_t kExtraEdges = 10;

// Mean speed multiplier per slot: free-flowing at night, congested at the
// morning peak, easing after noon, busy again in the evening.
inline constexpr std::array<double, kSlotCount> kSpeedFactor = {1.00, 0.85, 0.50, 0.70, 0.60, 0.90};

// Availability band [lo, hi) per slot for an average lot.
inline constexpr std::array<std::pair<double, double>, kSlotCount> kAvailabilityBand = {{
    {85.0, 98.0}, {55.0, 80.0}, {25.0, 50.0}, {5.0, 25.0}, {45.0, 70.0}, {75.0, 95.0},
}};

inline double round_to(double x, double step) { return std::round(x / step) * step; }

}  // namespace detail

inline RoadNetwork generate_example_network(std::uint64_t seed) {
  Rng rng(seed);

  std::vector<NodeRole> roles(kExampleNodeCount, NodeRole::Intermediate);
  roles[0] = roles[1] = NodeRole::Start;
  roles[28] = roles[29] = roles[30] = NodeRole::ParkingLot;

  std::set<std::pair<NodeId, NodeId>> pairs;
  auto add_pair = [&](NodeId a, NodeId b) { pairs.emplace(std::min(a, b), std::max(a, b)); };
  for (const Route& route : reference_routes()) {
    for (std::size_t i = 1; i < route.size(); ++i) add_pair(route.nodes[i - 1], route.nodes[i]);
  }
  for (const auto& [a, b] : detail::kBackboneEdges) add_pair(a, b);

  // Extra junction-to-junction shortcuts.
  std::size_t added = 0;
  while (added < detail::kExtraEdges) {
    const NodeId a = 2 + rng.below(26);
    const NodeId b = 2 + rng.below(26);
    if (a == b || pairs.contains({std::min(a, b), std::max(a, b)})) continue;
    add_pair(a, b);
    ++added;
  }

  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    Edge edge;
    edge.a = a;
    edge.b = b;
    edge.distance_km = detail::round_to(rng.uniform(0.4, 3.0), 0.01);
    const double base = rng.uniform(25.0, 60.0);
    for (TimeSlot slot : kAllSlots) {
      const double noise = rng.uniform(0.85, 1.15);
      edge.speed_kmh[slot] = detail::round_to(base * detail::kSpeedFactor[slot_index(slot)] * noise, 0.1);
    }
    edges.push_back(edge);
  }

  std::map<NodeId, SlotTable<double>> availability;
  for (NodeId lot : {NodeId{28}, NodeId{29}, NodeId{30}}) {
    SlotTable<double> table;
    for (TimeSlot slot : kAllSlots) {
      const auto [lo, hi] = detail::kAvailabilityBand[slot_index(slot)];
      table[slot] = detail::round_to(rng.uniform(lo, hi), 1.0);
    }
    availability[lot] = table;
  }

  return RoadNetwork(std::move(roles), std::move(edges), std::move(availability));
}

}  // namespace parkroute
