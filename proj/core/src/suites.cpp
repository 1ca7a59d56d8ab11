#include <graphpriv/suites.hpp>

#include <algorithm>
#include <cmath>

#include <graphpriv/errors.hpp>

namespace graphpriv {

SuiteSpec SuiteSpec::equal_weights(std::string name, std::vector<std::string> metric_names) {
  SuiteSpec s;
  s.name = std::move(name);
  const double w = 1.0 / static_cast<double>(metric_names.size());
  for (auto& m : metric_names) s.members.emplace_back(std::move(m), w);
  return s;
}

void SuiteSpec::validate() const {
  if (members.empty()) throw config_error("suite '" + name + "': needs at least one member");
  double sum = 0.0;
  for (const auto& [metric, weight] : members) {
    metric_by_name(metric);  // throws on unknown names
    if (!(weight > 0.0)) throw config_error("suite '" + name + "': weights must be positive");
    sum += weight;
  }
  if (std::fabs(sum - 1.0) > 1e-9) throw config_error("suite '" + name + "': weights must sum to 1");
}

const std::vector<SuiteSpec>& builtin_suites() {
  static const std::vector<SuiteSpec> suites = [] {
    std::vector<SuiteSpec> s;
    s.push_back(SuiteSpec::equal_weights("S1", {"adversary_overall_success"}));
    s.push_back(SuiteSpec::equal_weights("S2", {"adversary_overall_success",
                                                "normalized_variance"}));
    s.push_back(SuiteSpec::equal_weights(
        "S3", {"pearson_correlation", "adversary_overall_success", "normalized_variance",
               "amount_leaked_information"}));
    s.push_back(SuiteSpec{"S4",
                          {{"pearson_correlation", 0.1},
                           {"adversary_overall_success", 0.35},
                           {"normalized_variance", 0.1},
                           {"amount_leaked_information", 0.35},
                           {"incorrectness", 0.1}}});
    s.push_back(SuiteSpec{"S5",
                          {{"pearson_correlation", 0.1},
                           {"normalized_variance", 0.1},
                           {"incorrectness", 0.1},
                           {"amount_leaked_information", 0.25},
                           {"adversary_success_rate", 0.1},
                           {"adversary_overall_success", 0.25},
                           {"absolute_error", 0.1}}});
    for (const auto& suite : s) suite.validate();
    return s;
  }();
  return suites;
}

void AlternativeMatrix::validate() const {
  if (x.empty()) throw config_error("alternative matrix: needs at least one alternative");
  if (metrics.size() != directions.size()) {
    throw config_error("alternative matrix: metric/direction size mismatch");
  }
  for (const auto& row : x) {
    if (row.size() != metrics.size()) {
      throw config_error("alternative matrix: ragged rows");
    }
    for (double v : row) {
      if (!std::isfinite(v)) throw config_error("alternative matrix: non-finite entry");
    }
  }
}

std::vector<double> wpm_scores(const AlternativeMatrix& m, const SuiteSpec& suite) {
  suite.validate();
  m.validate();

  const std::size_t alts = m.x.size();
  std::vector<double> q(alts, 1.0);
  for (const auto& [metric, weight] : suite.members) {
    const auto col_it = std::find(m.metrics.begin(), m.metrics.end(), metric);
    if (col_it == m.metrics.end()) {
      throw config_error("wpm_scores: matrix has no column for metric " + metric);
    }
    const std::size_t j = static_cast<std::size_t>(col_it - m.metrics.begin());

    std::vector<double> col(alts);
    double col_min = m.x[0][j], col_max = m.x[0][j], col_abs = 0.0;
    for (std::size_t i = 0; i < alts; ++i) {
      col[i] = m.x[i][j];
      col_min = std::min(col_min, col[i]);
      col_max = std::max(col_max, col[i]);
      col_abs = std::max(col_abs, std::fabs(col[i]));
    }
    if (col_min <= 0.0) {
      // WPM needs positive entries; shift the whole column by a floor so
      // ordering within the column is preserved.
      const double floor_eps = 1e-9 * std::max(1.0, col_abs);
      const double shift = floor_eps - col_min;
      col_min = col_max = col.front() + shift;
      for (double& v : col) {
        v += shift;
        col_min = std::min(col_min, v);
        col_max = std::max(col_max, v);
      }
    }
    if (!(col_max > 0.0)) throw config_error("wpm_scores: column collapsed to zero");

    for (std::size_t i = 0; i < alts; ++i) {
      const double normalized = m.directions[j] == Direction::higher_better
                                    ? col[i] / col_max
                                    : col_min / col[i];
      q[i] *= std::pow(normalized, weight);
    }
  }
  return q;
}

SuiteQuality suite_monotonic_fraction(std::span<const AlternativeMatrix> scenarios,
                                      const SuiteSpec& suite) {
  std::size_t pairs = 0, correct = 0, monotonic_scenarios = 0;
  for (const auto& scenario : scenarios) {
    if (scenario.x.size() < 2) throw config_error("suite_monotonic_fraction: need >= 2 alternatives");
    const auto q = wpm_scores(scenario, suite);
    bool all_correct = true;
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
      ++pairs;
      if (q[i] > q[i + 1]) {  // privacy must strictly decrease; ties are wrong
        ++correct;
      } else {
        all_correct = false;
      }
    }
    if (all_correct) ++monotonic_scenarios;
  }
  SuiteQuality quality;
  quality.pair_fraction = pairs > 0 ? static_cast<double>(correct) / static_cast<double>(pairs) : 0.0;
  quality.scenario_monotonic_percent =
      scenarios.empty() ? 0.0
                        : 100.0 * static_cast<double>(monotonic_scenarios) /
                              static_cast<double>(scenarios.size());
  return quality;
}

std::vector<std::pair<SuiteSpec, SuiteQuality>> search_suites(
    const std::vector<std::string>& candidates,
    std::span<const AlternativeMatrix> scenarios,
    std::span<const SuiteSpec> extra_suites) {
  if (candidates.empty()) throw config_error("search_suites: no candidate metrics");
  if (candidates.size() > 12) throw config_error("search_suites: more than 12 candidates");

  std::vector<std::pair<SuiteSpec, SuiteQuality>> ranked;
  const std::size_t subsets = (std::size_t{1} << candidates.size()) - 1;
  for (std::size_t mask = 1; mask <= subsets; ++mask) {
    std::vector<std::string> members;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (mask & (std::size_t{1} << i)) members.push_back(candidates[i]);
    }
    std::string name = "suite";
    for (const auto& m : members) name += ":" + m;
    auto suite = SuiteSpec::equal_weights(std::move(name), std::move(members));
    auto quality = suite_monotonic_fraction(scenarios, suite);
    ranked.emplace_back(std::move(suite), quality);
  }
  for (const auto& suite : extra_suites) {
    ranked.emplace_back(suite, suite_monotonic_fraction(scenarios, suite));
  }

  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second.scenario_monotonic_percent != b.second.scenario_monotonic_percent) {
      return a.second.scenario_monotonic_percent > b.second.scenario_monotonic_percent;
    }
    if (a.second.pair_fraction != b.second.pair_fraction) {
      return a.second.pair_fraction > b.second.pair_fraction;
    }
    if (a.first.members.size() != b.first.members.size()) {
      return a.first.members.size() < b.first.members.size();
    }
    return a.first.name < b.first.name;
  });
  return ranked;
}

}  // namespace graphpriv
