#pragma once

/// @file scenario.hpp
/// @brief Whole-day experiment: one optimizer run per time slot, plus the
/// fitness CSV, route table and SVG chart written from its results.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "parkroute/error.hpp"
#include "parkroute/ga_engine.hpp"
#include "parkroute/objectives.hpp"
#include "parkroute/road_network.hpp"
#include "parkroute/time_slot.hpp"

namespace parkroute {

struct SlotResult {
  TimeSlot slot = TimeSlot::Night;
  Chromosome best;
  GenerationTrace trace;
};

struct DayReport {
  std::array<SlotResult, kSlotCount> slots;  // clock order
  WeightVector weights{1.0, 0.0, 0.0};
  GAConfig config;
};

inline SlotResult run_slot(const RoadNetwork& net, TimeSlot slot, const WeightVector& w, const GAConfig& cfg) {
  auto result = run(net, slot, w, cfg);
  return {slot, std::move(result.best), std::move(result.trace)};
}

struct DayOptions {
  bool per_slot_seeds = true;  // seed + slot index; otherwise every slot uses cfg.rng_seed
  bool parallel = true;
};

/// Runs all six slots. Results do not depend on `parallel`.
inline DayReport run_day(const RoadNetwork& net, const WeightVector& w, const GAConfig& cfg,
                         const DayOptions& options = {}) {
  cfg.validate();
  auto slot_config = [&](TimeSlot slot) {
    GAConfig c = cfg;
    if (options.per_slot_seeds) c.rng_seed = cfg.rng_seed + slot_index(slot);
    return c;
  };

  DayReport report{{}, w, cfg};
  if (options.parallel) {
    std::array<std::future<SlotResult>, kSlotCount> jobs;
    for (TimeSlot slot : kAllSlots) {
      jobs[slot_index(slot)] =
          std::async(std::launch::async, [&net, &w, slot, c = slot_config(slot)] { return run_slot(net, slot, w, c); });
    }
    for (std::size_t i = 0; i < kSlotCount; ++i) report.slots[i] = jobs[i].get();
  } else {
    for (TimeSlot slot : kAllSlots) report.slots[slot_index(slot)] = run_slot(net, slot, w, slot_config(slot));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Fitness table

inline std::string fitness_csv(const DayReport& report) {
  std::string out = "generation";
  for (auto name : kSlotNames) {
    out += ",";
    out += name;
  }
  out += "\n";
  const std::size_t rows = report.slots.front().trace.size();
  for (std::size_t g = 0; g < rows; ++g) {
    out += std::to_string(g + 1);
    for (const auto& s : report.slots) out += "," + format_fixed(s.trace.at(g).best_fitness);
    out += "\n";
  }
  return out;
}

inline void emit_fitness_csv(const DayReport& report, const std::string& path) {
  detail::write_text_file(path, fitness_csv(report));
}

/// Rows of best fitness per slot, as written by fitness_csv.
inline std::vector<std::array<double, kSlotCount>> parse_fitness_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("fitness csv: empty");
  std::string expected = "generation";
  for (auto name : kSlotNames) expected += "," + std::string(name);
  if (line != expected) throw ParseError("fitness csv: unexpected header '" + line + "'");
  std::vector<std::array<double, kSlotCount>> rows;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string cell;
    std::getline(fields, cell, ',');
    if (std::stoul(cell) != rows.size() + 1) throw ParseError("fitness csv: generations out of order");
    std::array<double, kSlotCount> row{};
    for (double& v : row) {
      if (!std::getline(fields, cell, ',')) throw ParseError("fitness csv: short row");
      v = std::stod(cell);
    }
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Route table

inline std::string route_table(const DayReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "TIME SLOT" << "ROUTES\n";
  for (const auto& s : report.slots) {
    out << std::left << std::setw(12) << slot_name(s.slot) << format_route(s.best.route) << "\n";
  }
  return out.str();
}

inline void emit_route_table(const DayReport& report, const std::string& path) {
  detail::write_text_file(path, route_table(report));
}

inline std::array<Route, kSlotCount> parse_route_table(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  std::array<Route, kSlotCount> routes;
  std::array<bool, kSlotCount> seen{};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto bracket = line.find('[');
    if (bracket == std::string::npos) throw ParseError("route table: missing route in '" + line + "'");
    std::string name = line.substr(0, bracket);
    name.erase(name.find_last_not_of(' ') + 1);
    const auto slot = parse_slot(name);
    if (!slot) throw ParseError("route table: unknown slot '" + name + "'");
    routes[slot_index(*slot)] = parse_route(line.substr(bracket));
    seen[slot_index(*slot)] = true;
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
    throw ParseError("route table: missing slots");
  }
  return routes;
}

// ---------------------------------------------------------------------------
// SVG line chart of best fitness against generation

namespace detail {

inline std::string svg_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

inline constexpr std::array<const char*, kSlotCount> kSeriesColors = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

}  // namespace detail

/// One <polyline class="series"> per slot. SVG y grows downward, so a
/// non-increasing fitness series has non-decreasing point y values.
inline std::string fitness_plot_svg(const DayReport& report) {
  constexpr double width = 800, height = 500;
  constexpr double left = 70, right = 170, top = 40, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  const std::size_t gens = report.slots.front().trace.size();
  double lo = 1.0, hi = 0.0;
  for (const auto& s : report.slots) {
    for (const auto& r : s.trace) {
      lo = std::min(lo, r.best_fitness);
      hi = std::max(hi, r.best_fitness);
    }
  }
  lo = std::floor(lo * 20.0) / 20.0;
  hi = std::ceil(hi * 20.0) / 20.0;
  if (!(hi > lo)) hi = lo + 0.05;

  auto x_of = [&](std::size_t g) {
    return gens > 1 ? left + plot_w * static_cast<double>(g - 1) / static_cast<double>(gens - 1) : left;
  };
  auto y_of = [&](double f) { return top + plot_h * (hi - f) / (hi - lo); };

  std::ostringstream out;
  using detail::svg_num;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << svg_num(left + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << "Fitness vs. generation by time slot</text>\n";
  out << "<g class=\"axes\" stroke=\"black\">\n";
  out << "<line x1=\"" << svg_num(left) << "\" y1=\"" << svg_num(top + plot_h) << "\" x2=\"" << svg_num(left + plot_w)
      << "\" y2=\"" << svg_num(top + plot_h) << "\"/>\n";
  out << "<line x1=\"" << svg_num(left) << "\" y1=\"" << svg_num(top) << "\" x2=\"" << svg_num(left) << "\" y2=\""
      << svg_num(top + plot_h) << "\"/>\n";
  out << "</g>\n";

  const int y_ticks = static_cast<int>(std::lround((hi - lo) / 0.05));
  for (int i = 0; i <= y_ticks; ++i) {
    const double f = lo + 0.05 * i;
    out << "<text x=\"" << svg_num(left - 8) << "\" y=\"" << svg_num(y_of(f) + 4) << "\" text-anchor=\"end\">"
        << svg_num(f) << "</text>\n";
  }
  const std::size_t x_step = std::max<std::size_t>(1, gens / 10);
  for (std::size_t g = 1; g <= gens; g += x_step) {
    out << "<text x=\"" << svg_num(x_of(g)) << "\" y=\"" << svg_num(top + plot_h + 18)
        << "\" text-anchor=\"middle\">" << g << "</text>\n";
  }
  out << "<text x=\"" << svg_num(left + plot_w / 2) << "\" y=\"" << svg_num(height - 16)
      << "\" text-anchor=\"middle\">Generation</text>\n";
  out << "<text x=\"18\" y=\"" << svg_num(top + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << svg_num(top + plot_h / 2) << ")\">Best fitness</text>\n";

  for (std::size_t i = 0; i < kSlotCount; ++i) {
    const auto& s = report.slots[i];
    out << "<polyline class=\"series\" data-slot=\"" << slot_name(s.slot) << "\" fill=\"none\" stroke=\""
        << detail::kSeriesColors[i] << "\" stroke-width=\"2\" points=\"";
    for (std::size_t g = 1; g <= s.trace.size(); ++g) {
      out << (g > 1 ? " " : "") << svg_num(x_of(g)) << "," << svg_num(y_of(s.trace[g - 1].best_fitness));
    }
    out << "\"/>\n";
  }

  out << "<g class=\"legend\">\n";
  for (std::size_t i = 0; i < kSlotCount; ++i) {
    const double y = top + 10 + 22.0 * static_cast<double>(i);
    const double x = left + plot_w + 20;
    out << "<line x1=\"" << svg_num(x) << "\" y1=\"" << svg_num(y) << "\" x2=\"" << svg_num(x + 24) << "\" y2=\""
        << svg_num(y) << "\" stroke=\"" << detail::kSeriesColors[i] << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << svg_num(x + 30) << "\" y=\"" << svg_num(y + 4) << "\">" << kSlotNames[i] << "</text>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

inline void emit_plot(const DayReport& report, const std::string& path) {
  detail::write_text_file(path, fitness_plot_svg(report));
}

}  // namespace parkroute
