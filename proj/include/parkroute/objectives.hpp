#pragma once

/// @file objectives.hpp
/// @brief Route objectives and the weighted-sum fitness (lower is better).
///
/// Three raw objectives are minimized: total distance, the negated sum of
/// segment speeds and the negated availability of the terminal lot. Each is
/// min-max scaled into [0, 1] against static, network-derived bounds and the
/// scaled values are combined with convex weights.

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "parkroute/error.hpp"
#include "parkroute/road_network.hpp"

namespace parkroute {

/// Convex weights for (distance, speed, availability).
class WeightVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  WeightVector(double distance, double speed, double availability)
      : distance_(distance), speed_(speed), availability_(availability) {
    for (double w : {distance, speed, availability}) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("weights must be non-negative");
    }
    if (std::abs(distance + speed + availability - 1.0) > kSumTolerance) {
      throw ValidationError("weights must sum to 1");
    }
  }

  double distance() const noexcept { return distance_; }
  double speed() const noexcept { return speed_; }
  double availability() const noexcept { return availability_; }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  double distance_;
  double speed_;
  double availability_;
};

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  friend bool operator==(const Range&, const Range&) = default;
};

struct ObjectiveBounds {
  Range distance_km;
  Range speed_sum;
  Range availability{0.0, 100.0};

  friend bool operator==(const ObjectiveBounds&, const ObjectiveBounds&) = default;
};

/// Min-max scaling of [a, b] onto [0, 1]; values outside the range clamp.
inline double normalize(double x, double a, double b) {
  if (!(b > a)) throw DegenerateBounds("normalization bounds need b > a");
  return std::clamp((x - a) / (b - a), 0.0, 1.0);
}

inline double normalize(double x, const Range& r) { return normalize(x, r.lo, r.hi); }

inline double objective_distance(const RoadNetwork& net, const Route& route) {
  return route_distance(net, route);
}

inline double objective_speed(const RoadNetwork& net, const Route& route, TimeSlot slot) {
  return -route_speed_sum(net, route, slot);
}

inline double objective_availability(const RoadNetwork& net, const Route& route, TimeSlot slot) {
  require_valid_route(net, route);
  return -lot_availability(net, route.back(), slot);
}

/// Distance in [0, total edge length], speed sum in [0, sum over edges of the
/// fastest slot speed], availability in [0, 100]. An all-zero upper bound is
/// widened to 1 so the range stays non-degenerate; every route then scales to 0.
inline ObjectiveBounds compute_bounds(const RoadNetwork& net) {
  if (net.edges().empty()) throw EmptyNetwork("network has no edges");
  double distance = 0.0;
  double speed = 0.0;
  for (const Edge& e : net.edges()) {
    distance += e.distance_km;
    speed += *std::max_element(e.speed_kmh.values.begin(), e.speed_kmh.values.end());
  }
  ObjectiveBounds bounds;
  bounds.distance_km = {0.0, distance > 0.0 ? distance : 1.0};
  bounds.speed_sum = {0.0, speed > 0.0 ? speed : 1.0};
  return bounds;
}

/// Per-objective scaled values that enter the fitness, each in [0, 1] with
/// 0 the best attainable.
struct ScaledObjectives {
  double distance = 0.0;
  double speed = 0.0;
  double availability = 0.0;
};

inline ScaledObjectives scaled_objectives(const RoadNetwork& net, const Route& route, TimeSlot slot,
                                          const ObjectiveBounds& bounds) {
  // Scaling -x over [-b, -a] equals 1 - scaling x over [a, b].
  return {normalize(objective_distance(net, route), bounds.distance_km),
          1.0 - normalize(-objective_speed(net, route, slot), bounds.speed_sum),
          1.0 - normalize(-objective_availability(net, route, slot), bounds.availability)};
}

inline double fitness(const RoadNetwork& net, const Route& route, TimeSlot slot, const WeightVector& w,
                      const ObjectiveBounds& bounds) {
  const auto s = scaled_objectives(net, route, slot, bounds);
  return w.distance() * s.distance + w.speed() * s.speed + w.availability() * s.availability;
}

// Weights file: {"distance": x, "speed": y, "availability": z}, summing to 1
// within 1e-9. Accepted values are rescaled to sum to 1 exactly.
inline WeightVector weights_from_json(const nlohmann::json& doc) {
  detail::reject_unknown_keys(doc, {"distance", "speed", "availability"}, "weights");
  const double d = detail::read_number(detail::require_key(doc, "distance", "weights"), "weights");
  const double s = detail::read_number(detail::require_key(doc, "speed", "weights"), "weights");
  const double a = detail::read_number(detail::require_key(doc, "availability", "weights"), "weights");
  if (!(d >= 0.0 && s >= 0.0 && a >= 0.0)) throw ValidationError("weights: values must be non-negative");
  const double sum = d + s + a;
  if (!(std::abs(sum - 1.0) <= 1e-9)) throw ValidationError("weights: values must sum to 1");
  const double ws = s / sum;
  const double wa = a / sum;
  return WeightVector(std::max(0.0, 1.0 - ws - wa), ws, wa);
}

inline WeightVector load_weights(const std::string& path) {
  return weights_from_json(detail::parse_json_text(detail::read_text_file(path), "weights"));
}

inline nlohmann::ordered_json weights_to_json(const WeightVector& w) {
  return {{"distance", w.distance()}, {"speed", w.speed()}, {"availability", w.availability()}};
}

}  // namespace parkroute
