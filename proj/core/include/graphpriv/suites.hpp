#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <graphpriv/metrics.hpp>

namespace graphpriv {

/// A metrics suite: member metrics with positive weights summing to 1.
struct SuiteSpec {
  std::string name;
  std::vector<std::pair<std::string, double>> members;

  static SuiteSpec equal_weights(std::string name, std::vector<std::string> metric_names);

  void validate() const;
};

/// The shipped suite presets S1-S5 (single best metric through the
/// seven-metric weighted suite).
const std::vector<SuiteSpec>& builtin_suites();

/// Mean metric values per alternative (row) and metric (column); alternatives
/// are ordered by ascending adversary strength when used for monotonic
/// ranking.
struct AlternativeMatrix {
  std::vector<std::string> metrics;
  std::vector<Direction> directions;
  std::vector<std::vector<double>> x;  // x[alternative][metric]

  void validate() const;
};

/// Weighted Product Model scores Q_i = prod_j (xbar_ij ^ w_j) with
/// direction-aware normalization: xbar = x / max for higher-better columns
/// and min / x for lower-better ones. Columns containing zero or negative
/// entries are shifted by a small positive floor first. Q_i is in (0, 1].
std::vector<double> wpm_scores(const AlternativeMatrix& m, const SuiteSpec& suite);

struct SuiteQuality {
  double pair_fraction = 0.0;              // share of adjacent pairs ranked correctly
  double scenario_monotonic_percent = 0.0; // share of all-correct scenarios, 0..100
};

/// Counts adjacent strength pairs where the suite score strictly decreases
/// (privacy falls as the adversary gets stronger); ties count as incorrect.
SuiteQuality suite_monotonic_fraction(std::span<const AlternativeMatrix> scenarios,
                                      const SuiteSpec& suite);

/// Enumerates all non-empty equal-weight subsets of the candidate metrics
/// (at most 12 candidates), plus any explicitly supplied suites, and ranks
/// them by scenario_monotonic_percent.
std::vector<std::pair<SuiteSpec, SuiteQuality>> search_suites(
    const std::vector<std::string>& candidates,
    std::span<const AlternativeMatrix> scenarios,
    std::span<const SuiteSpec> extra_suites = {});

}  // namespace graphpriv
