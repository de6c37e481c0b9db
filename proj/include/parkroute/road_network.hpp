#pragma once

/// @file road_network.hpp
/// @brief Undirected road graph with per-slot speeds and parking availability.
///
/// A RoadNetwork is validated once at construction and immutable afterwards,
/// so it can be shared read-only between concurrent optimizer runs.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "parkroute/error.hpp"
#include "parkroute/time_slot.hpp"

namespace parkroute {

using NodeId = std::size_t;

enum class NodeRole { Start, Intermediate, ParkingLot };

inline std::string_view role_name(NodeRole role) noexcept {
  switch (role) {
    case NodeRole::Start:
      return "start";
    case NodeRole::Intermediate:
      return "intermediate";
    case NodeRole::ParkingLot:
      return "lot";
  }
  return "?";
}

struct Edge {
  NodeId a = 0;
  NodeId b = 0;
  double distance_km = 0.0;
  SlotTable<double> speed_kmh;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Ordered node sequence from a start node to a parking lot.
struct Route {
  std::vector<NodeId> nodes;

  std::size_t size() const noexcept { return nodes.size(); }
  bool empty() const noexcept { return nodes.empty(); }
  NodeId front() const { return nodes.front(); }
  NodeId back() const { return nodes.back(); }

  friend bool operator==(const Route&, const Route&) = default;
};

/// Renders a route as a bracketed list, e.g. "[0, 4, 22, 13, 11, 2, 29]".
inline std::string format_route(const Route& route) {
  std::string out = "[";
  for (std::size_t i = 0; i < route.size(); ++i) {
    if (i != 0) out += ", ";
    out += std::to_string(route.nodes[i]);
  }
  out += "]";
  return out;
}

/// Inverse of format_route. Throws ParseError on malformed text.
inline Route parse_route(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw ParseError("route must be a bracketed list: " + std::string(text));
  }
  text = trim(text.substr(1, text.size() - 2));
  Route route;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (item.empty() || !std::all_of(item.begin(), item.end(),
                                     [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError("bad node id in route: '" + std::string(item) + "'");
    }
    route.nodes.push_back(std::stoull(std::string(item)));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return route;
}

class RoadNetwork {
 public:
  struct Neighbor {
    NodeId node;
    std::size_t edge;
  };

  /// Validates and builds a network. Throws ValidationError naming the first
  /// violated invariant.
  RoadNetwork(std::vector<NodeRole> roles, std::vector<Edge> edges,
              std::map<NodeId, SlotTable<double>> availability)
      : roles_(std::move(roles)),
        edges_(std::move(edges)),
        availability_(std::move(availability)),
        adjacency_(roles_.size()) {
    validate_and_index();
  }

  std::size_t node_count() const noexcept { return roles_.size(); }
  bool contains(NodeId n) const noexcept { return n < roles_.size(); }

  NodeRole role(NodeId n) const {
    require_node(n);
    return roles_[n];
  }

  std::span<const NodeRole> roles() const noexcept { return roles_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const std::vector<NodeId>& starts() const noexcept { return starts_; }
  const std::vector<NodeId>& lots() const noexcept { return lots_; }

  /// Adjacent nodes in ascending id order.
  std::span<const Neighbor> adjacency(NodeId n) const {
    require_node(n);
    return adjacency_[n];
  }

  /// Edge joining a and b in either direction, or nullptr.
  const Edge* find_edge(NodeId a, NodeId b) const noexcept {
    if (!contains(a) || !contains(b)) return nullptr;
    const auto& adj = adjacency_[a];
    auto it = std::lower_bound(adj.begin(), adj.end(), b,
                               [](const Neighbor& nb, NodeId id) { return nb.node < id; });
    if (it == adj.end() || it->node != b) return nullptr;
    return &edges_[it->edge];
  }

  double availability(NodeId lot, TimeSlot slot) const {
    require_node(lot);
    if (roles_[lot] != NodeRole::ParkingLot) {
      throw NotAParkingLot("node " + std::to_string(lot) + " is not a parking lot");
    }
    return availability_.at(lot)[slot];
  }

  const std::map<NodeId, SlotTable<double>>& availability_table() const noexcept {
    return availability_;
  }

  void require_node(NodeId n) const {
    if (!contains(n)) throw UnknownNode("unknown node " + std::to_string(n));
  }

 private:
  void validate_and_index() {
    auto fail = [](const std::string& what) { throw ValidationError(what); };

    for (NodeId n = 0; n < roles_.size(); ++n) {
      if (roles_[n] == NodeRole::Start) starts_.push_back(n);
      if (roles_[n] == NodeRole::ParkingLot) lots_.push_back(n);
    }
    if (starts_.empty()) fail("network has no start node");
    if (lots_.empty()) fail("network has no parking lot node");

    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const Edge& edge = edges_[e];
      const std::string tag = "edge " + std::to_string(edge.a) + "-" + std::to_string(edge.b);
      if (!contains(edge.a) || !contains(edge.b)) fail(tag + ": unknown endpoint");
      if (edge.a == edge.b) fail(tag + ": self-loop");
      if (!(edge.distance_km >= 0.0) || !std::isfinite(edge.distance_km)) {
        fail(tag + ": negative or non-finite distance");
      }
      for (TimeSlot slot : kAllSlots) {
        const double s = edge.speed_kmh[slot];
        if (!(s >= 0.0) || !std::isfinite(s)) {
          fail(tag + ": negative or non-finite speed at slot " + std::string(slot_name(slot)));
        }
      }
      adjacency_[edge.a].push_back({edge.b, e});
      adjacency_[edge.b].push_back({edge.a, e});
    }
    for (auto& adj : adjacency_) {
      std::sort(adj.begin(), adj.end(),
                [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
      for (std::size_t i = 1; i < adj.size(); ++i) {
        if (adj[i].node == adj[i - 1].node) {
          const Edge& edge = edges_[adj[i].edge];
          fail("edge " + std::to_string(edge.a) + "-" + std::to_string(edge.b) + ": duplicate edge");
        }
      }
    }

    for (const auto& [node, table] : availability_) {
      if (!contains(node) || roles_[node] != NodeRole::ParkingLot) {
        fail("availability given for non-lot node " + std::to_string(node));
      }
      for (TimeSlot slot : kAllSlots) {
        const double x = table[slot];
        if (!(x >= 0.0 && x <= 100.0)) {
          fail("lot " + std::to_string(node) + ": availability outside [0, 100] at slot " +
               std::string(slot_name(slot)));
        }
      }
    }
    for (NodeId lot : lots_) {
      if (!availability_.contains(lot)) {
        fail("lot " + std::to_string(lot) + ": missing availability");
      }
    }

    for (NodeId start : starts_) {
      if (!reaches_lot(start)) {
        fail("start " + std::to_string(start) + ": no parking lot reachable");
      }
    }
  }

  bool reaches_lot(NodeId from) const {
    std::vector<bool> seen(roles_.size(), false);
    std::queue<NodeId> frontier;
    frontier.push(from);
    seen[from] = true;
    while (!frontier.empty()) {
      const NodeId n = frontier.front();
      frontier.pop();
      if (roles_[n] == NodeRole::ParkingLot) return true;
      for (const Neighbor& nb : adjacency_[n]) {
        if (!seen[nb.node]) {
          seen[nb.node] = true;
          frontier.push(nb.node);
        }
      }
    }
    return false;
  }

  std::vector<NodeRole> roles_;
  std::vector<Edge> edges_;
  std::map<NodeId, SlotTable<double>> availability_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<NodeId> starts_;
  std::vector<NodeId> lots_;
};

// ---------------------------------------------------------------------------
// Path-level queries

/// Nodes sharing an edge with n, ascending.
inline std::vector<NodeId> neighbors(const RoadNetwork& net, NodeId n) {
  std::vector<NodeId> out;
  for (const auto& nb : net.adjacency(n)) out.push_back(nb.node);
  return out;
}

/// True iff the route starts at a Start node, ends at a ParkingLot, repeats
/// no node and follows network edges. Interior nodes may have any role.
inline bool is_valid_route(const RoadNetwork& net, const Route& route) {
  if (route.size() < 2) return false;
  for (NodeId n : route.nodes) {
    if (!net.contains(n)) return false;
  }
  if (net.role(route.front()) != NodeRole::Start) return false;
  if (net.role(route.back()) != NodeRole::ParkingLot) return false;
  std::vector<bool> seen(net.node_count(), false);
  for (NodeId n : route.nodes) {
    if (seen[n]) return false;
    seen[n] = true;
  }
  for (std::size_t i = 1; i < route.size(); ++i) {
    if (net.find_edge(route.nodes[i - 1], route.nodes[i]) == nullptr) return false;
  }
  return true;
}

inline void require_valid_route(const RoadNetwork& net, const Route& route) {
  if (!is_valid_route(net, route)) throw InvalidRoute("invalid route " + format_route(route));
}

inline double route_distance(const RoadNetwork& net, const Route& route) {
  require_valid_route(net, route);
  double total = 0.0;
  for (std::size_t i = 1; i < route.size(); ++i) {
    total += net.find_edge(route.nodes[i - 1], route.nodes[i])->distance_km;
  }
  return total;
}

inline double route_speed_sum(const RoadNetwork& net, const Route& route, TimeSlot slot) {
  require_valid_route(net, route);
  double total = 0.0;
  for (std::size_t i = 1; i < route.size(); ++i) {
    total += net.find_edge(route.nodes[i - 1], route.nodes[i])->speed_kmh[slot];
  }
  return total;
}

inline double lot_availability(const RoadNetwork& net, NodeId lot, TimeSlot slot) {
  return net.availability(lot, slot);
}

// ---------------------------------------------------------------------------
// JSON file format

namespace detail {

using json = nlohmann::json;

inline void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                                std::string_view where) {
  if (!obj.is_object()) throw ParseError(std::string(where) + ": expected an object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ParseError(std::string(where) + ": unknown key '" + item.key() + "'");
    }
  }
}

inline const json& require_key(const json& obj, const char* key, std::string_view where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string(where) + ": missing key '" + key + "'");
  return *it;
}

inline NodeId read_node_id(const json& value, std::string_view where) {
  if (!value.is_number_integer()) throw ParseError(std::string(where) + ": node id must be an integer");
  if (value.get<long long>() < 0) throw ValidationError(std::string(where) + ": negative node id");
  return value.get<NodeId>();
}

inline double read_number(const json& value, std::string_view where) {
  if (!value.is_number()) throw ParseError(std::string(where) + ": expected a number");
  return value.get<double>();
}

/// Reads an object keyed by slot names. Unknown keys are a parse error, a
/// missing slot is a validation error.
inline SlotTable<double> read_slot_table(const json& obj, std::string_view where) {
  if (!obj.is_object()) throw ParseError(std::string(where) + ": expected an object keyed by slot");
  SlotTable<double> table;
  for (const auto& item : obj.items()) {
    if (!parse_slot(item.key())) {
      throw ParseError(std::string(where) + ": unknown slot '" + item.key() + "'");
    }
  }
  for (TimeSlot slot : kAllSlots) {
    auto it = obj.find(std::string(slot_name(slot)));
    if (it == obj.end()) {
      throw ValidationError(std::string(where) + ": missing slot '" + std::string(slot_name(slot)) + "'");
    }
    table[slot] = read_number(*it, where);
  }
  return table;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

inline json parse_json_text(const std::string& text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace detail

inline RoadNetwork network_from_json(const nlohmann::json& doc) {
  using detail::require_key;
  detail::reject_unknown_keys(doc, {"nodes", "edges", "availability_pct"}, "network");

  const auto& nodes = require_key(doc, "nodes", "network");
  if (!nodes.is_array()) throw ParseError("network: 'nodes' must be a list");
  std::map<NodeId, NodeRole> by_id;
  for (const auto& node : nodes) {
    detail::reject_unknown_keys(node, {"id", "role"}, "node");
    const NodeId id = detail::read_node_id(require_key(node, "id", "node"), "node");
    const auto& role_value = require_key(node, "role", "node");
    if (!role_value.is_string()) throw ParseError("node " + std::to_string(id) + ": role must be a string");
    const auto role_text = role_value.get<std::string>();
    NodeRole role;
    if (role_text == "start") {
      role = NodeRole::Start;
    } else if (role_text == "intermediate") {
      role = NodeRole::Intermediate;
    } else if (role_text == "lot") {
      role = NodeRole::ParkingLot;
    } else {
      throw ValidationError("node " + std::to_string(id) + ": unknown role '" + role_text + "'");
    }
    if (!by_id.emplace(id, role).second) {
      throw ValidationError("node " + std::to_string(id) + ": duplicate id");
    }
  }
  std::vector<NodeRole> roles;
  for (const auto& [id, role] : by_id) {
    if (id != roles.size()) throw ValidationError("node ids must be dense 0..n-1; missing " + std::to_string(roles.size()));
    roles.push_back(role);
  }

  const auto& edge_list = require_key(doc, "edges", "network");
  if (!edge_list.is_array()) throw ParseError("network: 'edges' must be a list");
  std::vector<Edge> edges;
  for (const auto& item : edge_list) {
    detail::reject_unknown_keys(item, {"a", "b", "distance_km", "speed_kmh"}, "edge");
    Edge edge;
    edge.a = detail::read_node_id(require_key(item, "a", "edge"), "edge");
    edge.b = detail::read_node_id(require_key(item, "b", "edge"), "edge");
    const std::string tag = "edge " + std::to_string(edge.a) + "-" + std::to_string(edge.b);
    edge.distance_km = detail::read_number(require_key(item, "distance_km", tag), tag);
    edge.speed_kmh = detail::read_slot_table(require_key(item, "speed_kmh", tag), tag);
    edges.push_back(edge);
  }

  const auto& avail = require_key(doc, "availability_pct", "network");
  if (!avail.is_object()) throw ParseError("network: 'availability_pct' must be an object");
  std::map<NodeId, SlotTable<double>> availability;
  for (const auto& item : avail.items()) {
    const std::string& key = item.key();
    if (key.empty() || !std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError("availability_pct: key '" + key + "' is not a node id");
    }
    const NodeId lot = std::stoull(key);
    availability[lot] = detail::read_slot_table(item.value(), "availability of lot " + key);
  }

  return RoadNetwork(std::move(roles), std::move(edges), std::move(availability));
}

inline RoadNetwork parse_network(const std::string& text) {
  return network_from_json(detail::parse_json_text(text, "network"));
}

inline RoadNetwork load_network(const std::string& path) {
  return parse_network(detail::read_text_file(path));
}

inline nlohmann::ordered_json slot_table_to_json(const SlotTable<double>& table) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (TimeSlot slot : kAllSlots) obj[std::string(slot_name(slot))] = table[slot];
  return obj;
}

inline nlohmann::ordered_json network_to_json(const RoadNetwork& net) {
  nlohmann::ordered_json doc;
  doc["nodes"] = nlohmann::ordered_json::array();
  for (NodeId n = 0; n < net.node_count(); ++n) {
    doc["nodes"].push_back({{"id", n}, {"role", role_name(net.role(n))}});
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : net.edges()) {
    doc["edges"].push_back({{"a", e.a},
                            {"b", e.b},
                            {"distance_km", e.distance_km},
                            {"speed_kmh", slot_table_to_json(e.speed_kmh)}});
  }
  doc["availability_pct"] = nlohmann::ordered_json::object();
  for (const auto& [lot, table] : net.availability_table()) {
    doc["availability_pct"][std::to_string(lot)] = slot_table_to_json(table);
  }
  return doc;
}

inline std::string serialize_network(const RoadNetwork& net) {
  return network_to_json(net).dump(2) + "\n";
}

inline void save_network(const RoadNetwork& net, const std::string& path) {
  detail::write_text_file(path, serialize_network(net));
}

}  // namespace parkroute
