#pragma once

/// @file ga_engine.hpp
/// @brief Genetic algorithm over start-to-lot routes.
///
/// Individuals are simple paths. Every operator maps valid routes to valid
/// routes: initialization walks the graph, crossover only accepts spliced
/// children that pass is_valid_route, and mutation only substitutes genes
/// adjacent to both neighbours. Fitness is minimized.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "parkroute/error.hpp"
#include "parkroute/objectives.hpp"
#include "parkroute/random.hpp"
#include "parkroute/road_network.hpp"

namespace parkroute {

struct Chromosome {
  Route route;
  std::optional<double> fitness;

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

using Population = std::vector<Chromosome>;

struct GAConfig {
  std::size_t population_size = 50;
  std::size_t generations = 30;
  double crossover_rate = 0.2;  // per selected pair
  std::size_t tournament_size = 3;
  std::size_t elitism_count = 1;
  std::uint64_t rng_seed = 0;
  std::size_t max_init_retries = 1000;

  void validate() const {
    if (population_size == 0) throw ValidationError("population_size must be positive");
    if (generations == 0) throw ValidationError("generations must be positive");
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
      throw ValidationError("crossover_rate must lie in [0, 1]");
    }
    if (tournament_size < 2) throw ValidationError("tournament_size must be at least 2");
    if (elitism_count >= population_size) {
      throw ValidationError("elitism_count must be smaller than population_size");
    }
    if (max_init_retries == 0) throw ValidationError("max_init_retries must be positive");
  }
};

struct GenerationRecord {
  std::size_t generation = 0;  // 1-based
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  Route best_route;

  friend bool operator==(const GenerationRecord&, const GenerationRecord&) = default;
};

using GenerationTrace = std::vector<GenerationRecord>;

/// Fitness of routes for one (network, slot, weights, bounds) instance.
class Evaluator {
 public:
  Evaluator(const RoadNetwork& net, TimeSlot slot, WeightVector weights)
      : Evaluator(net, slot, weights, compute_bounds(net)) {}
  Evaluator(const RoadNetwork& net, TimeSlot slot, WeightVector weights, ObjectiveBounds bounds)
      : net_(&net), slot_(slot), weights_(weights), bounds_(bounds) {}

  double operator()(const Route& route) const { return fitness(*net_, route, slot_, weights_, bounds_); }

  const RoadNetwork& network() const noexcept { return *net_; }
  TimeSlot slot() const noexcept { return slot_; }
  const WeightVector& weights() const noexcept { return weights_; }
  const ObjectiveBounds& bounds() const noexcept { return bounds_; }

 private:
  const RoadNetwork* net_;
  TimeSlot slot_;
  WeightVector weights_;
  ObjectiveBounds bounds_;
};

inline void evaluate(Population& pop, const Evaluator& eval) {
  for (Chromosome& c : pop) {
    if (!c.fitness) c.fitness = eval(c.route);
  }
}

// ---------------------------------------------------------------------------
// Initialization

/// Random walk over unvisited neighbours from `start`, stopping at the first
/// parking lot reached. A dead end restarts the walk.
inline Route random_route(const RoadNetwork& net, NodeId start, Rng& rng, std::size_t max_retries = 1000) {
  if (net.role(start) != NodeRole::Start) {
    throw ValidationError("random_route: node " + std::to_string(start) + " is not a start node");
  }
  std::vector<bool> visited(net.node_count());
  std::vector<NodeId> options;
  for (std::size_t attempt = 0; attempt <= max_retries; ++attempt) {
    std::fill(visited.begin(), visited.end(), false);
    Route route{{start}};
    visited[start] = true;
    NodeId current = start;
    for (;;) {
      options.clear();
      for (const auto& nb : net.adjacency(current)) {
        if (!visited[nb.node]) options.push_back(nb.node);
      }
      if (options.empty()) break;
      current = options[rng.below(options.size())];
      visited[current] = true;
      route.nodes.push_back(current);
      if (net.role(current) == NodeRole::ParkingLot) return route;
    }
  }
  throw NoRouteFound("no route from start " + std::to_string(start) + " after " +
                     std::to_string(max_retries) + " restarts");
}

inline Population init_population(const RoadNetwork& net, const GAConfig& cfg, Rng& rng) {
  Population pop;
  pop.reserve(cfg.population_size);
  const auto& starts = net.starts();
  for (std::size_t i = 0; i < cfg.population_size; ++i) {
    const NodeId start = starts[rng.below(starts.size())];
    pop.push_back({random_route(net, start, rng, cfg.max_init_retries), std::nullopt});
  }
  return pop;
}

// ---------------------------------------------------------------------------
// Selection

/// Draws min(S, |pop|) distinct individuals (Floyd's sampling, one draw per
/// competitor) and returns the index of the lowest fitness, earliest draw
/// winning ties. Every individual must already carry a fitness.
inline std::size_t tournament_select_index(const Population& pop, std::size_t tournament_size, Rng& rng) {
  const std::size_t n = pop.size();
  const std::size_t s = std::min(tournament_size, n);
  std::vector<std::size_t> drawn;
  drawn.reserve(s);
  for (std::size_t j = n - s; j < n; ++j) {
    const std::size_t t = rng.below(j + 1);
    const bool taken = std::find(drawn.begin(), drawn.end(), t) != drawn.end();
    drawn.push_back(taken ? j : t);
  }
  std::size_t winner = drawn.front();
  for (std::size_t idx : drawn) {
    if (*pop[idx].fitness < *pop[winner].fitness) winner = idx;
  }
  return winner;
}

inline const Chromosome& tournament_select(const Population& pop, std::size_t tournament_size, Rng& rng) {
  return pop[tournament_select_index(pop, tournament_size, rng)];
}

// ---------------------------------------------------------------------------
// Crossover

namespace detail {

inline Route splice(const Route& head, std::size_t head_len, const Route& tail, std::size_t tail_from) {
  Route child;
  child.nodes.reserve(head_len + tail.size() - tail_from);
  child.nodes.insert(child.nodes.end(), head.nodes.begin(), head.nodes.begin() + head_len);
  child.nodes.insert(child.nodes.end(), tail.nodes.begin() + tail_from, tail.nodes.end());
  return child;
}

/// Cut offsets ordered by distance from the midpoint: 0, -1, +1, -2, +2, ...
inline std::vector<long> cut_offsets(std::size_t max_len) {
  std::vector<long> offsets{0};
  for (long d = 1; d <= static_cast<long>(max_len); ++d) {
    offsets.push_back(-d);
    offsets.push_back(d);
  }
  return offsets;
}

/// First valid child head[0..ch+d) ++ tail[ct+d..) over the offsets, if any.
inline std::optional<Route> first_valid_splice(const RoadNetwork& net, const Route& head, std::size_t head_cut,
                                               const Route& tail, std::size_t tail_cut) {
  const long hl = static_cast<long>(head.size());
  const long tl = static_cast<long>(tail.size());
  for (long d : cut_offsets(static_cast<std::size_t>(std::max(hl, tl)))) {
    const long h = static_cast<long>(head_cut) + d;
    const long t = static_cast<long>(tail_cut) + d;
    if (h < 1 || h > hl - 1 || t < 1 || t > tl - 1) continue;
    Route child = splice(head, static_cast<std::size_t>(h), tail, static_cast<std::size_t>(t));
    if (is_valid_route(net, child)) return child;
  }
  return std::nullopt;
}

inline const Chromosome& fitter(const Chromosome& a, const Chromosome& b) {
  if (a.fitness && b.fitness && *b.fitness < *a.fitness) return b;
  return a;
}

}  // namespace detail

/// Midpoint crossover. Child 1 takes the first ceil(|p1|/2) genes of p1 and
/// the last floor(|p2|/2) genes of p2; child 2 mirrors it. An invalid child
/// is retried at cuts shifted outward from the midpoint and, failing that,
/// replaced by a copy of the fitter parent. Children carry no fitness.
inline std::pair<Chromosome, Chromosome> single_point_crossover(const Chromosome& p1, const Chromosome& p2,
                                                                const RoadNetwork& net) {
  const std::size_t c1 = (p1.route.size() + 1) / 2;
  const std::size_t c2 = (p2.route.size() + 1) / 2;
  const Chromosome& fallback = detail::fitter(p1, p2);

  auto make = [&](const Route& head, std::size_t hc, const Route& tail, std::size_t tc) {
    if (auto child = detail::first_valid_splice(net, head, hc, tail, tc)) {
      return Chromosome{std::move(*child), std::nullopt};
    }
    return fallback;
  };
  return {make(p1.route, c1, p2.route, c2), make(p2.route, c2, p1.route, c1)};
}

// ---------------------------------------------------------------------------
// Mutation

/// Nodes that could replace the gene at `pos` (0 < pos < size-1): adjacent to
/// both neighbouring genes and not already on the route. Ascending.
inline std::vector<NodeId> mutation_candidates(const RoadNetwork& net, const Route& route, std::size_t pos) {
  std::vector<NodeId> out;
  if (pos == 0 || pos + 1 >= route.size()) return out;
  const auto before = net.adjacency(route.nodes[pos - 1]);
  const auto after = net.adjacency(route.nodes[pos + 1]);
  auto i = before.begin();
  auto j = after.begin();
  while (i != before.end() && j != after.end()) {
    if (i->node < j->node) {
      ++i;
    } else if (j->node < i->node) {
      ++j;
    } else {
      if (std::find(route.nodes.begin(), route.nodes.end(), i->node) == route.nodes.end()) {
        out.push_back(i->node);
      }
      ++i;
      ++j;
    }
  }
  return out;
}

/// Replaces the gene at `pos` with `replacement`, which must be one of
/// mutation_candidates(net, route, pos).
inline Chromosome mutate_gene(const Chromosome& c, std::size_t pos, NodeId replacement, const RoadNetwork& net) {
  const auto candidates = mutation_candidates(net, c.route, pos);
  if (std::find(candidates.begin(), candidates.end(), replacement) == candidates.end()) {
    throw InvalidRoute("node " + std::to_string(replacement) + " cannot replace gene " + std::to_string(pos) +
                       " of " + format_route(c.route));
  }
  Chromosome out{c.route, std::nullopt};
  out.route.nodes[pos] = replacement;
  return out;
}

/// Each interior gene mutates with probability 1/n to a uniformly drawn
/// candidate; genes without candidates stay. Endpoints never change.
inline Chromosome creep_mutate(const Chromosome& c, const RoadNetwork& net, Rng& rng) {
  Chromosome out = c;
  const std::size_t n = out.route.size();
  if (n < 3) return out;
  const double rate = 1.0 / static_cast<double>(n);
  for (std::size_t pos = 1; pos + 1 < n; ++pos) {
    if (!rng.bernoulli(rate)) continue;
    const auto candidates = mutation_candidates(net, out.route, pos);
    if (candidates.empty()) continue;
    out.route.nodes[pos] = candidates[rng.below(candidates.size())];
    out.fitness.reset();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generational update and run loop

/// Indices of `pop` ordered by fitness, ties by position.
inline std::vector<std::size_t> rank_by_fitness(const Population& pop) {
  std::vector<std::size_t> order(pop.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return *pop[a].fitness < *pop[b].fitness; });
  return order;
}

/// One generation: copy the elites, then breed the rest by tournament
/// selection, crossover with the configured rate (the fitter child advances,
/// otherwise the fitter parent) and mutation. `pop` must be evaluated; the
/// returned population is evaluated too.
inline Population evolve_generation(const Population& pop, const Evaluator& eval, const GAConfig& cfg, Rng& rng) {
  const RoadNetwork& net = eval.network();
  Population next;
  next.reserve(cfg.population_size);
  const auto order = rank_by_fitness(pop);
  for (std::size_t i = 0; i < cfg.elitism_count && i < order.size(); ++i) next.push_back(pop[order[i]]);

  while (next.size() < cfg.population_size) {
    const Chromosome& p1 = tournament_select(pop, cfg.tournament_size, rng);
    const Chromosome& p2 = tournament_select(pop, cfg.tournament_size, rng);
    Chromosome picked;
    if (rng.bernoulli(cfg.crossover_rate)) {
      auto [c1, c2] = single_point_crossover(p1, p2, net);
      if (!c1.fitness) c1.fitness = eval(c1.route);
      if (!c2.fitness) c2.fitness = eval(c2.route);
      picked = detail::fitter(c1, c2);
    } else {
      picked = detail::fitter(p1, p2);
    }
    Chromosome child = creep_mutate(picked, net, rng);
    if (!child.fitness) child.fitness = eval(child.route);
    next.push_back(std::move(child));
  }
  return next;
}

struct RunResult {
  Chromosome best;
  GenerationTrace trace;
};

/// Called after each generation with (1-based generation, population).
using GenerationObserver = std::function<void(std::size_t, const Population&)>;

/// Evaluates a random initial population, then runs cfg.generations
/// generations. Trace entry g describes the population after generation g;
/// the returned best is the lowest fitness seen anywhere, initial population
/// included.
inline RunResult run(const Evaluator& eval, const GAConfig& cfg, const GenerationObserver& observer = {}) {
  cfg.validate();
  Rng rng(cfg.rng_seed);
  Population pop = init_population(eval.network(), cfg, rng);
  evaluate(pop, eval);

  RunResult result;
  result.best = pop[rank_by_fitness(pop).front()];
  result.trace.reserve(cfg.generations);
  for (std::size_t g = 1; g <= cfg.generations; ++g) {
    pop = evolve_generation(pop, eval, cfg, rng);
    if (observer) observer(g, pop);
    const Chromosome& best = pop[rank_by_fitness(pop).front()];
    double sum = 0.0;
    for (const Chromosome& c : pop) sum += *c.fitness;
    result.trace.push_back({g, *best.fitness, sum / static_cast<double>(pop.size()), best.route});
    if (*best.fitness < *result.best.fitness) result.best = best;
  }
  return result;
}

inline RunResult run(const RoadNetwork& net, TimeSlot slot, const WeightVector& w, const GAConfig& cfg,
                     const GenerationObserver& observer = {}) {
  return run(Evaluator(net, slot, w), cfg, observer);
}

// ---------------------------------------------------------------------------
// Files

inline std::string format_fixed(double x, int precision = 6) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision) << x;
  return out.str();
}

/// CSV with columns generation,best_fitness,mean_fitness,best_route.
inline std::string trace_to_csv(const GenerationTrace& trace) {
  std::string out = "generation,best_fitness,mean_fitness,best_route\n";
  for (const auto& rec : trace) {
    out += std::to_string(rec.generation) + "," + format_fixed(rec.best_fitness) + "," +
           format_fixed(rec.mean_fitness) + ",\"" + format_route(rec.best_route) + "\"\n";
  }
  return out;
}

inline GAConfig ga_config_from_json(const nlohmann::json& doc, GAConfig cfg = {}) {
  detail::reject_unknown_keys(doc,
                              {"population_size", "generations", "crossover_rate", "tournament_size",
                               "elitism_count", "rng_seed", "max_init_retries"},
                              "ga config");
  auto read_count = [&](const char* key, auto& field) {
    auto it = doc.find(key);
    if (it == doc.end()) return;
    if (!it->is_number_integer() || it->template get<long long>() < 0) {
      throw ParseError(std::string("ga config: '") + key + "' must be a non-negative integer");
    }
    field = it->template get<std::remove_reference_t<decltype(field)>>();
  };
  read_count("population_size", cfg.population_size);
  read_count("generations", cfg.generations);
  read_count("tournament_size", cfg.tournament_size);
  read_count("elitism_count", cfg.elitism_count);
  read_count("rng_seed", cfg.rng_seed);
  read_count("max_init_retries", cfg.max_init_retries);
  if (auto it = doc.find("crossover_rate"); it != doc.end()) {
    cfg.crossover_rate = detail::read_number(*it, "ga config");
  }
  cfg.validate();
  return cfg;
}

inline GAConfig load_ga_config(const std::string& path, GAConfig defaults = {}) {
  return ga_config_from_json(detail::parse_json_text(detail::read_text_file(path), "ga config"), defaults);
}

}  // namespace parkroute
