#pragma once

/// @file oracle.hpp
/// @brief Exhaustive reference solver for small networks.

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "parkroute/error.hpp"
#include "parkroute/objectives.hpp"
#include "parkroute/road_network.hpp"

namespace parkroute {

struct EnumerationLimit {
  std::size_t max_routes = 1'000'000;
  std::size_t max_path_length = 64;
};

namespace detail {

class RouteEnumerator {
 public:
  RouteEnumerator(const RoadNetwork& net, const EnumerationLimit& limit)
      : net_(net), limit_(limit), on_path_(net.node_count(), false) {}

  std::vector<Route> run() {
    for (NodeId start : net_.starts()) {
      path_.nodes.assign(1, start);
      on_path_[start] = true;
      extend();
      on_path_[start] = false;
    }
    return std::move(routes_);
  }

 private:
  void extend() {
    const NodeId tip = path_.back();
    for (const auto& nb : net_.adjacency(tip)) {
      if (on_path_[nb.node]) continue;
      if (path_.size() >= limit_.max_path_length) {
        throw LimitExceeded("enumeration: a route exceeds " + std::to_string(limit_.max_path_length) + " nodes");
      }
      path_.nodes.push_back(nb.node);
      on_path_[nb.node] = true;
      if (net_.role(nb.node) == NodeRole::ParkingLot) {
        if (routes_.size() >= limit_.max_routes) {
          throw LimitExceeded("enumeration: more than " + std::to_string(limit_.max_routes) + " routes");
        }
        routes_.push_back(path_);
      }
      // Routes may pass through a lot on the way to another.
      extend();
      on_path_[nb.node] = false;
      path_.nodes.pop_back();
    }
  }

  const RoadNetwork& net_;
  EnumerationLimit limit_;
  std::vector<bool> on_path_;
  Route path_;
  std::vector<Route> routes_;
};

}  // namespace detail

/// Every simple path from a start node to a parking lot, depth-first with
/// starts and neighbours in ascending id order. Throws LimitExceeded instead
/// of truncating.
inline std::vector<Route> enumerate_routes(const RoadNetwork& net, const EnumerationLimit& limit = {}) {
  return detail::RouteEnumerator(net, limit).run();
}

struct ScoredRoute {
  Route route;
  double fitness = 0.0;
};

inline std::vector<ScoredRoute> score_routes(const RoadNetwork& net, TimeSlot slot, const WeightVector& w,
                                             const ObjectiveBounds& bounds, const EnumerationLimit& limit = {}) {
  std::vector<ScoredRoute> out;
  for (Route& r : enumerate_routes(net, limit)) {
    const double f = fitness(net, r, slot, w, bounds);
    out.push_back({std::move(r), f});
  }
  return out;
}

/// Minimal-fitness route; ties go to the first in enumeration order.
inline ScoredRoute optimal_route(const RoadNetwork& net, TimeSlot slot, const WeightVector& w,
                                 const ObjectiveBounds& bounds, const EnumerationLimit& limit = {}) {
  auto scored = score_routes(net, slot, w, bounds, limit);
  if (scored.empty()) throw NoRouteFound("no start-to-lot route exists");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scored.size(); ++i) {
    if (scored[i].fitness < scored[best].fitness) best = i;
  }
  return scored[best];
}

}  // namespace parkroute
