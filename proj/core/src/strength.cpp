#include <graphpriv/strength.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include <graphpriv/errors.hpp>
#include <graphpriv/stats.hpp>

namespace graphpriv {

namespace {

// Raw score of one significance/direction sequence. Elements are the signs of
// significant mean differences mean(level_k) - mean(level_{k+1}) (0 =
// insignificant). A rising pair followed by a falling pair, both significant,
// is a peak in the value series and costs an extra 2; insignificant gaps
// break peak adjacency.
int raw_score(std::span<const int> diff_signs, int expected_sign) {
  int raw = 0;
  for (std::size_t i = 0; i < diff_signs.size(); ++i) {
    const int s = diff_signs[i];
    if (s == 0) continue;
    raw += (s == expected_sign) ? 1 : -1;
    if (i > 0 && diff_signs[i - 1] == -1 && s == 1) raw -= 2;  // rise then fall
  }
  return raw;
}

}  // namespace

int min_raw_monotonicity(int pairs, Direction direction) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, int> cache;
  const int expected = direction == Direction::higher_better ? 1 : -1;

  std::scoped_lock lock(mu);
  auto it = cache.find({pairs, expected});
  if (it != cache.end()) return it->second;

  std::vector<int> seq(pairs, -1);
  int best = 0;
  long total = 1;
  for (int i = 0; i < pairs; ++i) total *= 3;
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int i = 0; i < pairs; ++i) {
      seq[i] = static_cast<int>(c % 3) - 1;
      c /= 3;
    }
    best = std::min(best, raw_score(seq, expected));
  }
  cache.emplace(std::pair{pairs, expected}, best);
  return best;
}

double monotonicity_score(const ScenarioSeries& series, double alpha) {
  if (series.levels.size() < 2) throw config_error("monotonicity_score: need >= 2 levels");
  for (const auto& level : series.levels) {
    if (level.size() < 2) throw config_error("monotonicity_score: need >= 2 replications per level");
  }
  if (!series.metric) throw config_error("monotonicity_score: missing metric descriptor");

  const int pairs = static_cast<int>(series.levels.size()) - 1;
  const int expected = series.metric->direction == Direction::higher_better ? 1 : -1;
  const int s_min = min_raw_monotonicity(pairs, series.metric->direction);
  const int s_max = pairs;

  double combined = 0.0;
  for (int test = 0; test < 2; ++test) {
    std::vector<int> signs(pairs, 0);
    for (int p = 0; p < pairs; ++p) {
      const auto& a = series.levels[p];
      const auto& b = series.levels[p + 1];
      const stats::TestOutcome outcome = test == 0 ? stats::welch_t_test(a, b, alpha)
                                                   : stats::rank_sum_test(a, b, alpha);
      signs[p] = outcome.sign_if_significant();
    }
    const int raw = raw_score(signs, expected);
    combined += static_cast<double>(raw - s_min) / static_cast<double>(s_max - s_min);
  }
  return combined / 2.0;
}

double evenness_score(std::span<const double> pooled_values) {
  if (pooled_values.size() < 2) throw config_error("evenness_score: need >= 2 values");
  const double n = static_cast<double>(pooled_values.size());

  double lo = pooled_values[0], hi = pooled_values[0];
  for (double v : pooled_values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi <= lo) return 0.0;

  // Map extremes onto the CvM sample grid so that affine images of the
  // perfect grid (2i-1)/(2n) land exactly back on it.
  const double grid_lo = 1.0 / (2.0 * n);
  const double grid_hi = (2.0 * n - 1.0) / (2.0 * n);
  std::vector<double> normalized;
  normalized.reserve(pooled_values.size());
  for (double v : pooled_values) {
    normalized.push_back(grid_lo + (v - lo) / (hi - lo) * (grid_hi - grid_lo));
  }
  const double omega2 = stats::cvm_uniform(normalized) * n;  // undo the 1/n normalization
  return std::max(0.0, 1.0 - 3.0 * omega2);
}

std::vector<double> shared_range_scores(
    std::span<const std::pair<double, double>> scenario_ranges,
    std::pair<double, double> global_range) {
  const double width = global_range.second - global_range.first;
  std::vector<double> scores;
  scores.reserve(scenario_ranges.size());
  for (const auto& [lo, hi] : scenario_ranges) {
    if (width <= 0.0) {
      scores.push_back(1.0);  // a constant metric is perfectly consistent
    } else {
      scores.push_back(std::clamp((hi - lo) / width, 0.0, 1.0));
    }
  }
  return scores;
}

}  // namespace graphpriv
