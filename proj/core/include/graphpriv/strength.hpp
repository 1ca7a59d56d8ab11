#pragma once

#include <span>
#include <string>
#include <vector>

#include <graphpriv/metrics.hpp>

namespace graphpriv {

/// Identifies one experiment scenario: a dataset attacked through one
/// anonymizer/de-anonymizer combination with one way of scaling adversary
/// strength ("seeds" or "aux").
struct ScenarioId {
  std::string dataset;
  std::string anonymizer;
  std::string deanonymizer;
  std::string strength_type;

  std::string str() const {
    return dataset + "|" + anonymizer + "|" + deanonymizer + "|" + strength_type;
  }
  auto operator<=>(const ScenarioId&) const = default;
};

/// Replicated metric samples per adversary strength level, levels ordered by
/// ascending strength.
struct ScenarioSeries {
  ScenarioId id;
  const MetricDescriptor* metric = nullptr;
  std::vector<std::vector<double>> levels;
};

struct StrengthScores {
  double monotonicity = 0.0;
  double evenness = 0.0;
  double shared_range = 0.0;
};

/// Monotonicity score in [0,1]. For each of the Welch t-test and the rank-sum
/// test, adjacent strength levels contribute +1 when the mean moves
/// significantly in the expected direction (down for higher-better metrics,
/// up for lower-better), -1 when it moves significantly the wrong way, 0 when
/// insignificant; every rise-then-fall pair of consecutive significant
/// contributions (a peak) costs an extra 2. The raw score is mapped linearly
/// from [s_min, P] onto [0,1], with s_min the minimum reachable raw score
/// (enumerated exhaustively and cached per pair count), and the two tests are
/// averaged.
double monotonicity_score(const ScenarioSeries& series, double alpha = 0.05);

/// Minimum raw monotonicity score over all significance/direction sequences
/// of the given length; exposed so tests can compare against an independent
/// enumeration.
int min_raw_monotonicity(int pairs, Direction direction);

/// Evenness of pooled metric values in [0,1]: values are min-max normalized
/// onto the Cramer-von Mises sample grid [1/(2n), (2n-1)/(2n)] so a perfect
/// grid scores the optimum, then scored as 1 - 3 * omega^2 clamped at 0.
/// All-equal inputs score 0.
double evenness_score(std::span<const double> pooled_values);

/// Shared value range: per-scenario span over the global span; degenerate
/// global ranges give every scenario a score of 1.
std::vector<double> shared_range_scores(
    std::span<const std::pair<double, double>> scenario_ranges,
    std::pair<double, double> global_range);

}  // namespace graphpriv
