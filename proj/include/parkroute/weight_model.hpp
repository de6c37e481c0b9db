#pragma once

/// @file weight_model.hpp
/// @brief Objective weights from categorical survey counts.
///
/// Two estimators are provided. The frequentist one uses the pooled vote
/// proportions. The Bayesian one treats each batch of votes as a
/// multinomial draw whose category probabilities follow a Dirichlet prior;
/// the prior concentrations are chosen by maximizing the Dirichlet-multinomial
/// marginal likelihood over a fixed grid, and the weights are the posterior
/// means (a_i + n_i) / sum_j (a_j + n_j).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "parkroute/error.hpp"
#include "parkroute/road_network.hpp"

namespace parkroute {

/// One or more batches of votes over k >= 2 preference categories.
class SurveyCounts {
 public:
  using Batch = std::vector<std::uint64_t>;

  explicit SurveyCounts(std::vector<Batch> batches, std::vector<std::string> categories = {})
      : batches_(std::move(batches)), categories_(std::move(categories)) {
    if (batches_.empty()) throw ValidationError("survey has no batches");
    const std::size_t k = batches_.front().size();
    if (k < 2) throw ValidationError("survey needs at least two categories");
    for (const Batch& b : batches_) {
      if (b.size() != k) throw ValidationError("survey batches differ in category count");
    }
    if (!categories_.empty() && categories_.size() != k) {
      throw ValidationError("survey category names do not match batch width");
    }
    pooled_.assign(k, 0);
    for (const Batch& b : batches_) {
      for (std::size_t i = 0; i < k; ++i) pooled_[i] += b[i];
    }
  }

  /// Convenience for the single-batch case.
  static SurveyCounts single(Batch counts) { return SurveyCounts({std::move(counts)}); }

  std::size_t categories() const noexcept { return pooled_.size(); }
  const std::vector<Batch>& batches() const noexcept { return batches_; }
  const std::vector<std::string>& category_names() const noexcept { return categories_; }
  const Batch& pooled() const noexcept { return pooled_; }
  std::uint64_t total() const noexcept {
    return std::accumulate(pooled_.begin(), pooled_.end(), std::uint64_t{0});
  }

 private:
  std::vector<Batch> batches_;
  std::vector<std::string> categories_;
  Batch pooled_;
};

/// Dirichlet concentrations a_i > 0.
class ConcentrationVector {
 public:
  explicit ConcentrationVector(std::vector<double> values) : values_(std::move(values)) {
    for (double a : values_) {
      if (!(a > 0.0) || !std::isfinite(a)) {
        throw InvalidConcentration("concentration parameters must be positive and finite");
      }
    }
  }

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const noexcept { return values_; }
  double total() const noexcept { return std::accumulate(values_.begin(), values_.end(), 0.0); }

  friend bool operator==(const ConcentrationVector&, const ConcentrationVector&) = default;

 private:
  std::vector<double> values_;
};

enum class EstimationMethod { Frequentist, Bayesian };

struct WeightEstimate {
  std::vector<double> weights;
  std::vector<double> variances;
  EstimationMethod method = EstimationMethod::Frequentist;
  std::optional<ConcentrationVector> concentration;  // Bayesian only
};

/// Grid of candidate concentrations, shared by every component.
struct SearchConfig {
  std::vector<double> grid = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};

  /// Log-spaced grid of `points` values from a_min to a_max inclusive.
  static SearchConfig log_spaced(double a_min, double a_max, std::size_t points) {
    if (!(a_min > 0.0) || !(a_max > a_min) || points < 2) {
      throw ValidationError("search bounds need 0 < a_min < a_max and at least two points");
    }
    SearchConfig cfg;
    cfg.grid.clear();
    const double ratio = std::log(a_max / a_min) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
      cfg.grid.push_back(i + 1 == points ? a_max : a_min * std::exp(ratio * static_cast<double>(i)));
    }
    return cfg;
  }
};

namespace detail {

inline void check_dimensions(const SurveyCounts& counts, const ConcentrationVector& a) {
  if (a.size() != counts.categories()) {
    throw InvalidConcentration("concentration length " + std::to_string(a.size()) +
                               " does not match " + std::to_string(counts.categories()) +
                               " survey categories");
  }
}

/// Normalizes by the running sum so the weights add to 1 to rounding.
inline std::vector<double> proportions(const std::vector<double>& mass) {
  const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
  std::vector<double> w;
  w.reserve(mass.size());
  for (double m : mass) w.push_back(m / total);
  return w;
}

}  // namespace detail

inline WeightEstimate frequentist_weights(const SurveyCounts& counts) {
  const auto n_total = counts.total();
  if (n_total == 0) throw EmptySurvey("survey has no votes");
  const double n = static_cast<double>(n_total);
  std::vector<double> mass(counts.pooled().begin(), counts.pooled().end());
  WeightEstimate est;
  est.method = EstimationMethod::Frequentist;
  est.weights = detail::proportions(mass);
  for (double w : est.weights) est.variances.push_back(w * (1.0 - w) / n);
  return est;
}

/// Log probability of the observed batches under a Dirichlet(a)-multinomial,
/// including the multinomial coefficient.
inline double dm_log_marginal_likelihood(const SurveyCounts& counts, const ConcentrationVector& a) {
  detail::check_dimensions(counts, a);
  const double a0 = a.total();
  double total = 0.0;
  for (const auto& batch : counts.batches()) {
    double n_b = 0.0;
    double term = 0.0;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const double n_i = static_cast<double>(batch[i]);
      n_b += n_i;
      term += std::lgamma(a[i] + n_i) - std::lgamma(a[i]) - std::lgamma(n_i + 1.0);
    }
    term += std::lgamma(a0) - std::lgamma(a0 + n_b) + std::lgamma(n_b + 1.0);
    total += term;
  }
  return total;
}

/// Exhaustive search of grid^k for the marginal-likelihood maximizer. Points
/// are visited in lexicographic order and only a strictly larger likelihood
/// replaces the incumbent, so ties resolve to the lexicographically smallest a.
inline ConcentrationVector estimate_concentration(const SurveyCounts& counts,
                                                  const SearchConfig& search = {}) {
  if (counts.total() == 0) throw EmptySurvey("survey has no votes");
  if (search.grid.empty()) throw ValidationError("empty concentration grid");
  for (std::size_t i = 0; i < search.grid.size(); ++i) {
    if (!(search.grid[i] > 0.0) || (i > 0 && !(search.grid[i] > search.grid[i - 1]))) {
      throw ValidationError("concentration grid must be positive and strictly increasing");
    }
  }

  const std::size_t k = counts.categories();
  const std::size_t g = search.grid.size();
  std::vector<std::size_t> index(k, 0);
  std::vector<double> point(k);
  std::vector<double> best;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) point[i] = search.grid[index[i]];
    const double ll = dm_log_marginal_likelihood(counts, ConcentrationVector(point));
    if (best.empty() || ll > best_ll) {
      best_ll = ll;
      best = point;
    }
    // Odometer increment, last component fastest.
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++index[pos] < g) break;
      index[pos] = 0;
      if (pos == 0) return ConcentrationVector(best);
    }
  }
}

inline WeightEstimate bayesian_weights(const SurveyCounts& counts, const ConcentrationVector& a) {
  detail::check_dimensions(counts, a);
  std::vector<double> mass;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mass.push_back(a[i] + static_cast<double>(counts.pooled()[i]));
  }
  const double c0 = std::accumulate(mass.begin(), mass.end(), 0.0);
  WeightEstimate est;
  est.method = EstimationMethod::Bayesian;
  est.weights = detail::proportions(mass);
  // Marginal variance of the Dirichlet posterior.
  for (double w : est.weights) est.variances.push_back(w * (1.0 - w) / (c0 + 1.0));
  est.concentration = a;
  return est;
}

struct EstimateComparison {
  WeightEstimate frequentist;
  WeightEstimate bayesian;
  std::vector<double> variance_ratio;  // Bayesian / frequentist, NaN where frequentist is 0
};

inline EstimateComparison compare_estimates(const SurveyCounts& counts,
                                            const SearchConfig& search = {}) {
  EstimateComparison cmp{frequentist_weights(counts),
                         bayesian_weights(counts, estimate_concentration(counts, search)),
                         {}};
  for (std::size_t i = 0; i < counts.categories(); ++i) {
    const double f = cmp.frequentist.variances[i];
    cmp.variance_ratio.push_back(f > 0.0 ? cmp.bayesian.variances[i] / f
                                         : std::numeric_limits<double>::quiet_NaN());
  }
  return cmp;
}

/// Aligned text table: one row per category plus a total row.
inline std::string format_comparison(const SurveyCounts& counts, const EstimateComparison& cmp) {
  const std::size_t k = counts.categories();
  std::vector<std::string> names = counts.category_names();
  if (names.empty()) {
    for (std::size_t i = 0; i < k; ++i) names.push_back("category " + std::to_string(i + 1));
  }
  std::size_t name_width = 11;
  for (const auto& n : names) name_width = std::max(name_width, n.size());

  std::ostringstream out;
  auto cell = [&out](const std::string& s, int width) { out << std::setw(width) << s; };
  auto num = [](double x, int prec) {
    std::ostringstream s;
    if (std::isnan(x)) return std::string("n/a");
    s << std::fixed << std::setprecision(prec) << x;
    return s.str();
  };

  out << std::left << std::setw(static_cast<int>(name_width)) << "Description" << std::right;
  cell("Count", 8);
  cell("Freq Weight", 13);
  cell("Bayes Weight", 14);
  cell("Err Var Freq", 14);
  cell("Err Var Bayes", 15);
  cell("Var Ratio", 11);
  out << "\n";
  out << std::left << std::setw(static_cast<int>(name_width)) << "Total" << std::right;
  cell(std::to_string(counts.total()), 8);
  cell(num(1.0, 4), 13);
  cell(num(1.0, 4), 14);
  out << "\n";
  for (std::size_t i = 0; i < k; ++i) {
    out << std::left << std::setw(static_cast<int>(name_width)) << names[i] << std::right;
    cell(std::to_string(counts.pooled()[i]), 8);
    cell(num(cmp.frequentist.weights[i], 4), 13);
    cell(num(cmp.bayesian.weights[i], 4), 14);
    cell(num(cmp.frequentist.variances[i], 6), 14);
    cell(num(cmp.bayesian.variances[i], 6), 15);
    cell(num(cmp.variance_ratio[i], 4), 11);
    out << "\n";
  }
  if (cmp.bayesian.concentration) {
    out << "concentration a = (";
    const auto& a = cmp.bayesian.concentration->values();
    for (std::size_t i = 0; i < a.size(); ++i) out << (i ? ", " : "") << num(a[i], 4);
    out << ")\n";
  }
  return out.str();
}

// Survey file: {"categories": [...], "batches": [[...], ...]}
inline SurveyCounts survey_from_json(const nlohmann::json& doc) {
  detail::reject_unknown_keys(doc, {"categories", "batches"}, "survey");
  const auto& cats = detail::require_key(doc, "categories", "survey");
  const auto& batches = detail::require_key(doc, "batches", "survey");
  if (!cats.is_array() || !batches.is_array()) throw ParseError("survey: 'categories' and 'batches' must be lists");
  std::vector<std::string> names;
  for (const auto& c : cats) {
    if (!c.is_string()) throw ParseError("survey: category names must be strings");
    names.push_back(c.get<std::string>());
  }
  std::vector<SurveyCounts::Batch> rows;
  for (const auto& b : batches) {
    if (!b.is_array()) throw ParseError("survey: each batch must be a list of counts");
    SurveyCounts::Batch row;
    for (const auto& v : b) {
      if (!v.is_number_integer()) throw ParseError("survey: counts must be integers");
      if (v.get<long long>() < 0) throw ValidationError("survey: negative count");
      row.push_back(v.get<std::uint64_t>());
    }
    rows.push_back(std::move(row));
  }
  SurveyCounts counts(std::move(rows), std::move(names));
  if (counts.total() == 0) throw EmptySurvey("survey has no votes");
  return counts;
}

inline SurveyCounts load_survey(const std::string& path) {
  return survey_from_json(detail::parse_json_text(detail::read_text_file(path), "survey"));
}

}  // namespace parkroute
