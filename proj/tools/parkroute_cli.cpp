// parkroute: command-line front end for the parking-route optimizer.
//
// Exit codes: 0 success, 1 usage error, 2 invalid input data.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "parkroute/parkroute.hpp"

namespace {

using namespace parkroute;

constexpr const char* kConfigEnv = "PARKROUTE_CONFIG";

struct GaFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> generations;
  std::optional<std::size_t> population;

  void attach(CLI::App* cmd, bool seed_required) {
    cmd->add_option("--config", config_path,
                    std::string("GA config file (JSON); defaults to $") + kConfigEnv + " when set");
    auto* s = cmd->add_option("--seed", seed, "RNG seed");
    if (seed_required) s->required();
    cmd->add_option("--generations", generations, "number of generations (default 30)");
    cmd->add_option("--population", population, "population size (default 50)");
  }

  // Defaults, then the config file, then explicit flags.
  GAConfig resolve() const {
    GAConfig cfg;
    std::string path = config_path;
    if (path.empty()) {
      if (const char* env = std::getenv(kConfigEnv); env != nullptr && *env != '\0') path = env;
    }
    if (!path.empty()) cfg = load_ga_config(path, cfg);
    if (seed) cfg.rng_seed = *seed;
    if (generations) cfg.generations = *generations;
    if (population) cfg.population_size = *population;
    cfg.validate();
    return cfg;
  }
};

TimeSlot slot_from_flag(const std::string& name) {
  if (auto slot = parse_slot(name)) return *slot;
  throw ValidationError("unknown time slot '" + name + "'");
}

void print_estimate(const char* label, const WeightEstimate& est) {
  std::cout << label << " weights:";
  for (double w : est.weights) std::cout << " " << format_fixed(w, 4);
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parking route optimizer: survey-based weights, GA route search, day simulation"};
  app.require_subcommand(1);

  // weights estimate
  auto* weights = app.add_subcommand("weights", "objective weight estimation");
  weights->require_subcommand(1);
  auto* estimate = weights->add_subcommand("estimate", "estimate weights from a survey file");
  std::string survey_path;
  std::string method = "both";
  std::string weights_out;
  estimate->add_option("--survey", survey_path, "survey file (JSON)")->required();
  estimate->add_option("--method", method, "freq, bayes or both")
      ->check(CLI::IsMember({"freq", "bayes", "both"}));
  estimate->add_option("--out", weights_out, "write a weights file (Bayesian unless --method freq)");

  // optimize
  auto* optimize = app.add_subcommand("optimize", "run the GA for one time slot");
  std::string network_path, weights_path, slot_name_flag, trace_path;
  GaFlags optimize_flags;
  optimize->add_option("--network", network_path, "network file (JSON)")->required();
  optimize->add_option("--slot", slot_name_flag, "time slot, e.g. 8am-12pm")->required();
  optimize->add_option("--weights", weights_path, "weights file (JSON)")->required();
  optimize->add_option("--trace", trace_path, "write the generation trace as CSV");
  optimize_flags.attach(optimize, true);

  // simulate-day
  auto* simulate = app.add_subcommand("simulate-day", "run all six time slots and write reports");
  std::string out_dir;
  GaFlags simulate_flags;
  simulate->add_option("--network", network_path, "network file (JSON)")->required();
  simulate->add_option("--weights", weights_path, "weights file (JSON)")->required();
  simulate->add_option("--out", out_dir, "output directory")->required();
  simulate_flags.attach(simulate, true);

  // gen-network
  auto* gen = app.add_subcommand("gen-network", "write the seeded 31-node example network");
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--seed", gen_seed, "RNG seed")->required();
  gen->add_option("--out", gen_out, "output file")->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exhaustive optimum for small networks");
  std::string oracle_csv;
  EnumerationLimit limit;
  oracle->add_option("--network", network_path, "network file (JSON)")->required();
  oracle->add_option("--slot", slot_name_flag, "time slot")->required();
  oracle->add_option("--weights", weights_path, "weights file (JSON)")->required();
  oracle->add_option("--out", oracle_csv, "write every route with its fitness as CSV");
  oracle->add_option("--max-routes", limit.max_routes, "abort beyond this many routes");
  oracle->add_option("--max-length", limit.max_path_length, "abort beyond this many nodes per route");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const CLI::App* failed = &app;
    while (!failed->get_subcommands().empty()) failed = failed->get_subcommands().front();
    std::cerr << failed->help();
    return 1;
  }

  try {
    if (estimate->parsed()) {
      const auto counts = load_survey(survey_path);
      const auto freq = frequentist_weights(counts);
      std::optional<WeightEstimate> bayes;
      if (method != "freq") {
        const auto cmp = compare_estimates(counts);
        bayes = cmp.bayesian;
        if (method == "both") {
          std::cout << format_comparison(counts, cmp);
        } else {
          print_estimate("Bayesian", cmp.bayesian);
        }
      } else {
        print_estimate("Frequentist", freq);
      }
      if (!weights_out.empty()) {
        const auto& chosen = bayes ? bayes->weights : freq.weights;
        if (chosen.size() != 3) throw ValidationError("weights file needs exactly three survey categories");
        const WeightVector w(std::max(0.0, 1.0 - chosen[1] - chosen[2]), chosen[1], chosen[2]);
        detail::write_text_file(weights_out, weights_to_json(w).dump(2) + "\n");
      }
    } else if (optimize->parsed()) {
      const auto net = load_network(network_path);
      const auto w = load_weights(weights_path);
      const auto slot = slot_from_flag(slot_name_flag);
      const auto cfg = optimize_flags.resolve();
      const Evaluator eval(net, slot, w);
      const auto result = run(eval, cfg);
      const auto& route = result.best.route;
      std::cout << "slot:         " << slot_name(slot) << "\n"
                << "best route:   " << format_route(route) << "\n"
                << "fitness:      " << format_fixed(*result.best.fitness) << "\n"
                << "distance km:  " << format_fixed(route_distance(net, route), 3) << "\n"
                << "speed sum:    " << format_fixed(route_speed_sum(net, route, slot), 1) << "\n"
                << "availability: " << format_fixed(lot_availability(net, route.back(), slot), 1) << "\n";
      if (!trace_path.empty()) detail::write_text_file(trace_path, trace_to_csv(result.trace));
    } else if (simulate->parsed()) {
      const auto net = load_network(network_path);
      const auto w = load_weights(weights_path);
      const auto cfg = simulate_flags.resolve();
      const auto report = run_day(net, w, cfg);
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
      const std::filesystem::path dir(out_dir);
      emit_fitness_csv(report, (dir / "fitness.csv").string());
      emit_route_table(report, (dir / "routes.txt").string());
      emit_plot(report, (dir / "fitness.svg").string());
      std::cout << route_table(report);
    } else if (gen->parsed()) {
      save_network(generate_example_network(gen_seed), gen_out);
    } else if (oracle->parsed()) {
      const auto net = load_network(network_path);
      const auto w = load_weights(weights_path);
      const auto slot = slot_from_flag(slot_name_flag);
      const auto bounds = compute_bounds(net);
      const auto scored = score_routes(net, slot, w, bounds, limit);
      if (scored.empty()) throw NoRouteFound("no start-to-lot route exists");
      const auto best = *std::min_element(scored.begin(), scored.end(),
                                          [](const auto& a, const auto& b) { return a.fitness < b.fitness; });
      std::cout << "routes:     " << scored.size() << "\n"
                << "best route: " << format_route(best.route) << "\n"
                << "fitness:    " << format_fixed(best.fitness) << "\n";
      if (!oracle_csv.empty()) {
        std::string csv = "route,fitness\n";
        for (const auto& s : scored) csv += "\"" + format_route(s.route) + "\"," + format_fixed(s.fitness) + "\n";
        detail::write_text_file(oracle_csv, csv);
      }
    }
  } catch (const parkroute::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
