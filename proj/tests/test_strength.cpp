#include <doctest.h>

#include <cmath>
#include <vector>

#include <graphpriv/rng.hpp>
#include <graphpriv/stats.hpp>
#include <graphpriv/strength.hpp>

#include "helpers.hpp"
#include "strength_oracle.hpp"

using namespace graphpriv;
using namespace testing_fixtures;

namespace {

ScenarioSeries series_for(const char* metric, std::vector<std::vector<double>> levels) {
  ScenarioSeries s;
  s.id = {"ds", "anon", "deanon", "seeds"};
  s.metric = &metric_by_name(metric);
  s.levels = std::move(levels);
  return s;
}

std::vector<std::vector<double>> gaussian_levels(const std::vector<double>& means,
                                                 double sigma, std::size_t reps,
                                                 Rng& rng) {
  std::vector<std::vector<double>> levels;
  for (double mean : means) {
    std::vector<double> level;
    for (std::size_t i = 0; i < reps; ++i) {
      const double u1 = std::max(rng.next_double(), 1e-12);
      const double u2 = rng.next_double();
      level.push_back(mean + sigma * std::sqrt(-2.0 * std::log(u1)) *
                                 std::cos(2.0 * M_PI * u2));
    }
    levels.push_back(std::move(level));
  }
  return levels;
}

// Numeric ECDF integration of the CvM statistic: T = n * integral over [0,1]
// of (F_n(x) - x)^2 dx, evaluated segment-wise between sorted sample points.
double ecdf_cvm_statistic(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  auto ecdf = [&](double x) {
    std::size_t count = 0;
    while (count < values.size() && values[count] <= x) ++count;
    return static_cast<double>(count) / n;
  };
  const int steps = 400000;
  double integral = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double x = (static_cast<double>(i) + 0.5) / steps;
    const double d = ecdf(x) - x;
    integral += d * d / steps;
  }
  return n * integral;
}

}  // namespace

TEST_SUITE("strength") {

TEST_CASE("perfectly separated decreasing higher-better series scores 1.0") {
  Rng rng(1);
  auto levels = gaussian_levels({0.9, 0.7, 0.5, 0.3, 0.2, 0.1}, 1e-4, 10, rng);
  CHECK(monotonicity_score(series_for("entropy", levels)) == doctest::Approx(1.0));
}

TEST_CASE("reversed all-significant series with no peaks scores exactly 0.0") {
  Rng rng(2);
  auto levels = gaussian_levels({0.1, 0.2, 0.3, 0.5, 0.7, 0.9}, 1e-4, 10, rng);
  CHECK(monotonicity_score(series_for("entropy", levels)) == doctest::Approx(0.0));
}

TEST_CASE("lower-better metrics expect rising means") {
  Rng rng(3);
  auto rising = gaussian_levels({0.1, 0.3, 0.5, 0.7, 0.9}, 1e-4, 10, rng);
  CHECK(monotonicity_score(series_for("adversary_success_rate", rising)) ==
        doctest::Approx(1.0));
}

TEST_CASE("indistinguishable levels land on the insignificant plateau") {
  Rng rng(4);
  // One sample set reused for every level: all pairwise tests come out
  // insignificant by construction.
  auto level = gaussian_levels({0.5}, 1e-3, 8, rng).front();
  std::vector<std::vector<double>> levels(6, level);
  const auto series = series_for("entropy", levels);
  const int pairs = 5;
  const int s_min = min_raw_monotonicity(pairs, Direction::higher_better);
  const double plateau = static_cast<double>(0 - s_min) / static_cast<double>(pairs - s_min);
  CHECK(monotonicity_score(series) == doctest::Approx(plateau));
}

TEST_CASE("a single sharp peak pays the extra penalty") {
  Rng rng(5);
  // Rise then fall (all significant): contributions -1, -1, +1, +1 with one
  // rise-to-fall adjacency at the peak.
  auto levels = gaussian_levels({0.2, 0.5, 0.9, 0.5, 0.2}, 1e-4, 10, rng);
  const auto series = series_for("entropy", levels);
  const int s_min = min_raw_monotonicity(4, Direction::higher_better);
  const double expected = static_cast<double>((-1 - 1 + 1 + 1 - 2) - s_min) /
                          static_cast<double>(4 - s_min);
  CHECK(monotonicity_score(series) == doctest::Approx(expected));
  CHECK(monotonicity_score(series) == doctest::Approx(strength_oracle::oracle_monotonicity(series, 0.05)));
}

TEST_CASE("level reversal flips the score when all pairs are significant") {
  Rng rng(6);
  auto levels = gaussian_levels({0.9, 0.75, 0.55, 0.35, 0.1}, 1e-4, 12, rng);
  auto reversed = levels;
  std::reverse(reversed.begin(), reversed.end());
  const double fwd = monotonicity_score(series_for("entropy", levels));
  const double bwd = monotonicity_score(series_for("entropy", reversed));
  CHECK(fwd == doctest::Approx(1.0));
  CHECK(bwd == doctest::Approx(1.0 - fwd));
}

TEST_CASE("enumerated minimum raw score equals the independent oracle") {
  for (int pairs = 1; pairs <= 7; ++pairs) {
    CHECK(min_raw_monotonicity(pairs, Direction::higher_better) == strength_oracle::oracle_s_min(pairs, 1));
    CHECK(min_raw_monotonicity(pairs, Direction::lower_better) == strength_oracle::oracle_s_min(pairs, -1));
    // The reachable minimum is exactly -P: wrong directions cost 1 per pair
    // and every peak needs a +1 rise to enable its -2.
    CHECK(min_raw_monotonicity(pairs, Direction::higher_better) == -pairs);
  }
}

TEST_CASE("monotonicity matches the rule-text oracle on random series") {
  Rng rng(77);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t level_count = 3 + rng.below(5);
    const std::size_t reps = 5 + rng.below(12);
    std::vector<double> means;
    double mean = rng.next_double();
    for (std::size_t l = 0; l < level_count; ++l) {
      means.push_back(mean);
      if (rng.below(4) == 0) {
        // plateau level
      } else {
        mean += (rng.next_double() - 0.5) * 0.5;
      }
    }
    const double sigma = rng.below(3) == 0 ? 0.2 : 0.01;
    auto levels = gaussian_levels(means, sigma, reps, rng);
    const char* metric = rng.below(2) == 0 ? "entropy" : "adversary_success_rate";
    const auto series = series_for(metric, levels);
    CHECK(monotonicity_score(series) == doctest::Approx(strength_oracle::oracle_monotonicity(series, 0.05)));
  }
}

TEST_CASE("monotonicity rejects short or thin series") {
  CHECK_THROWS(monotonicity_score(series_for("entropy", {{1.0, 2.0}})));
  CHECK_THROWS(monotonicity_score(series_for("entropy", {{1.0, 2.0}, {1.0}})));
}

TEST_CASE("evenness: affine images of the perfect grid stay near 1") {
  for (std::size_t n : {20u, 100u}) {
    std::vector<double> grid;
    for (std::size_t i = 1; i <= n; ++i) {
      grid.push_back(3.0 + 10.0 * (2.0 * static_cast<double>(i) - 1.0) /
                               (2.0 * static_cast<double>(n)));
    }
    const double expected = 1.0 - 1.0 / (4.0 * static_cast<double>(n));
    CHECK(evenness_score(grid) == doctest::Approx(expected).epsilon(1e-9));
  }
  // n = 100 clears the 0.997 bar.
  std::vector<double> grid;
  for (std::size_t i = 1; i <= 100; ++i) grid.push_back((2.0 * i - 1.0) / 200.0);
  CHECK(evenness_score(grid) >= 0.997);
}

TEST_CASE("evenness: degenerate and bimodal pools score low") {
  const std::vector<double> constant(50, 0.7);
  CHECK(evenness_score(constant) == doctest::Approx(0.0));

  std::vector<double> bimodal;
  for (int i = 0; i < 50; ++i) bimodal.push_back(0.0);
  for (int i = 0; i < 50; ++i) bimodal.push_back(1.0);
  const double score = evenness_score(bimodal);
  CHECK(score < 0.5);
  CHECK(score == doctest::Approx(0.0));  // mass at the ends collapses to zero
}

TEST_CASE("evenness agrees with a numeric ECDF integration of the statistic") {
  Rng rng(31);
  std::vector<double> values;
  for (int i = 0; i < 200; ++i) values.push_back(rng.next_double());
  // Recreate the pipeline's grid mapping, then integrate the ECDF directly.
  double lo = values[0], hi = values[0];
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double n = static_cast<double>(values.size());
  std::vector<double> mapped;
  for (double v : values) {
    mapped.push_back(1.0 / (2.0 * n) +
                     (v - lo) / (hi - lo) * (n - 1.0) / n);
  }
  const double omega2 = ecdf_cvm_statistic(mapped);
  const double expected = std::max(0.0, 1.0 - 3.0 * omega2);
  CHECK(evenness_score(values) == doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("evenness is invariant under affine rescaling") {
  Rng rng(13);
  std::vector<double> values, scaled;
  for (int i = 0; i < 150; ++i) {
    const double v = rng.next_double() * rng.next_double();
    values.push_back(v);
    scaled.push_back(-4.0 + 13.0 * v);
  }
  CHECK(evenness_score(values) == doctest::Approx(evenness_score(scaled)).epsilon(1e-12));
}

TEST_CASE("shared range scores") {
  const std::vector<std::pair<double, double>> ranges{{0.0, 1.0}, {0.4, 0.6}, {0.2, 0.2}};
  auto scores = shared_range_scores(ranges, {0.0, 1.0});
  CHECK(scores[0] == doctest::Approx(1.0));
  CHECK(scores[1] == doctest::Approx(0.2));
  CHECK(scores[2] == doctest::Approx(0.0));

  auto constant = shared_range_scores(ranges, {0.5, 0.5});
  for (double s : constant) CHECK(s == doctest::Approx(1.0));

  // Global affine rescaling leaves scores unchanged.
  std::vector<std::pair<double, double>> rescaled;
  for (auto [a, b] : ranges) rescaled.emplace_back(2.0 + 3.0 * a, 2.0 + 3.0 * b);
  auto scores2 = shared_range_scores(rescaled, {2.0, 5.0});
  for (std::size_t i = 0; i < scores.size(); ++i) {
    CHECK(scores[i] == doctest::Approx(scores2[i]));
  }
}

}  // TEST_SUITE
