#pragma once

// Brute-force oracle for the monotonicity scorer: re-derives the score
// directly from the rule text, with its own peak bookkeeping and its own
// s_min enumeration. Shared by the unit and acceptance suites.

#include <algorithm>
#include <vector>

#include <graphpriv/stats.hpp>
#include <graphpriv/strength.hpp>

namespace strength_oracle {

namespace stats = graphpriv::stats;

using graphpriv::Direction;
using graphpriv::ScenarioSeries;

int oracle_raw(const std::vector<int>& signs, int expected) {
  int raw = 0;
  int previous_significant_sign = 0;
  bool previous_was_significant = false;
  for (int s : signs) {
    if (s == 0) {
      previous_was_significant = false;
      continue;
    }
    raw += s == expected ? 1 : -1;
    // A peak is a significant rise immediately followed by a significant
    // fall: mean-difference signs (-1, +1) back to back.
    if (previous_was_significant && previous_significant_sign == -1 && s == 1) raw -= 2;
    previous_significant_sign = s;
    previous_was_significant = true;
  }
  return raw;
}

int oracle_s_min(int pairs, int expected) {
  std::vector<int> signs(pairs);
  int best = 0;
  long total = 1;
  for (int i = 0; i < pairs; ++i) total *= 3;
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int i = 0; i < pairs; ++i) {
      signs[i] = static_cast<int>(c % 3) - 1;
      c /= 3;
    }
    best = std::min(best, oracle_raw(signs, expected));
  }
  return best;
}

double oracle_monotonicity(const ScenarioSeries& series, double alpha) {
  const int pairs = static_cast<int>(series.levels.size()) - 1;
  const int expected = series.metric->direction == Direction::higher_better ? 1 : -1;
  const int s_min = oracle_s_min(pairs, expected);

  double sum = 0.0;
  for (int test = 0; test < 2; ++test) {
    std::vector<int> signs;
    for (int p = 0; p < pairs; ++p) {
      auto outcome = test == 0 ? stats::welch_t_test(series.levels[p], series.levels[p + 1], alpha)
                               : stats::rank_sum_test(series.levels[p], series.levels[p + 1], alpha);
      signs.push_back(outcome.significant ? outcome.mean_diff_sign : 0);
    }
    sum += static_cast<double>(oracle_raw(signs, expected) - s_min) /
           static_cast<double>(pairs - s_min);
  }
  return sum / 2.0;
}


}  // namespace strength_oracle
