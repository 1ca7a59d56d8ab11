#include <doctest.h>

#include <cmath>
#include <vector>

#include <graphpriv/rng.hpp>
#include <graphpriv/stats.hpp>

using namespace graphpriv;

namespace {

// Independent oracle for the Student-t tail: Simpson integration of the
// density, never touching the incomplete-beta path used by the
// implementation.
double t_two_sided_p_by_quadrature(double t, double df) {
  const double log_norm = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) -
                          0.5 * std::log(df * M_PI);
  auto density = [&](double x) {
    return std::exp(log_norm - (df + 1.0) / 2.0 * std::log1p(x * x / df));
  };
  const double a = std::fabs(t), b = a + 60.0;
  const int steps = 200000;
  const double h = (b - a) / steps;
  double sum = density(a) + density(b);
  for (int i = 1; i < steps; ++i) {
    sum += density(a + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return 2.0 * sum * h / 3.0;
}

std::vector<double> gaussian_sample(std::size_t n, double mean, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Box-Muller
    const double u1 = std::max(rng.next_double(), 1e-12);
    const double u2 = rng.next_double();
    out.push_back(mean + std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2));
  }
  return out;
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("welch: identical samples give p=1, sign 0") {
  const std::vector<double> a{1.0, 2.0, 3.0, 4.0};
  auto out = stats::welch_t_test(a, a);
  CHECK(out.p_value == doctest::Approx(1.0));
  CHECK(out.mean_diff_sign == 0);
  CHECK_FALSE(out.significant);
}

TEST_CASE("welch: zero variance, unequal means gives p=0") {
  const std::vector<double> a{0.0, 0.0, 0.0, 0.0};
  const std::vector<double> b{1.0, 1.0, 1.0, 1.0};
  auto out = stats::welch_t_test(a, b);
  CHECK(out.p_value == doctest::Approx(0.0));
  CHECK(out.mean_diff_sign == -1);
  CHECK(out.significant);
}

TEST_CASE("welch matches the quadrature oracle on gaussian samples") {
  const auto a = gaussian_sample(30, 0.0, 11);
  const auto b = gaussian_sample(30, 1.0, 17);
  auto out = stats::welch_t_test(a, b);

  // Recompute the t statistic and df directly for the oracle.
  const double ma = stats::mean(a), mb = stats::mean(b);
  const double va = stats::sample_variance(a), vb = stats::sample_variance(b);
  const double se2 = va / 30.0 + vb / 30.0;
  const double t = (ma - mb) / std::sqrt(se2);
  const double df = se2 * se2 / (va * va / (30.0 * 30.0 * 29.0) + vb * vb / (30.0 * 30.0 * 29.0));
  const double oracle = t_two_sided_p_by_quadrature(t, df);
  CHECK(out.p_value == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("tests are symmetric under sample swap") {
  Rng rng(99);
  for (int rep = 0; rep < 25; ++rep) {
    std::vector<double> a, b;
    for (int i = 0; i < 8; ++i) a.push_back(rng.next_double());
    for (int i = 0; i < 11; ++i) b.push_back(rng.next_double() + 0.2);
    for (int which = 0; which < 2; ++which) {
      auto test = which == 0 ? stats::welch_t_test : stats::rank_sum_test;
      auto ab = test(a, b, 0.05);
      auto ba = test(b, a, 0.05);
      CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-12));
      CHECK(ab.mean_diff_sign == -ba.mean_diff_sign);
      CHECK(ab.p_value >= 0.0);
      CHECK(ab.p_value <= 1.0);
    }
  }
}

TEST_CASE("rank-sum exact: {1,2} vs {3,4} has two-sided p = 1/3") {
  const std::vector<double> a{1.0, 2.0};
  const std::vector<double> b{3.0, 4.0};
  auto out = stats::rank_sum_test(a, b);
  CHECK(out.p_value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("rank-sum: identical and all-tied samples give p = 1") {
  const std::vector<double> a{1.0, 2.0};
  CHECK(stats::rank_sum_test(a, a).p_value == doctest::Approx(1.0));
  const std::vector<double> tied_a{5.0, 5.0, 5.0};
  const std::vector<double> tied_b{5.0, 5.0, 5.0, 5.0};
  CHECK(stats::rank_sum_test(tied_a, tied_b).p_value == doctest::Approx(1.0));

  // Degenerate ties through the normal approximation path too.
  const std::vector<double> big(9, 5.0);
  const std::vector<double> big2(9, 5.0);
  CHECK(stats::rank_sum_test(big, big2).p_value == doctest::Approx(1.0));
}

TEST_CASE("rank-sum exact tracks the normal approximation for n >= 10") {
  Rng rng(4242);
  for (int rep = 0; rep < 60; ++rep) {
    std::vector<double> a, b;
    for (int i = 0; i < 5; ++i) a.push_back(rng.next_double());
    for (int i = 0; i < 6; ++i) b.push_back(rng.next_double() + 0.1 * (rep % 3));
    const double exact = stats::detail::rank_sum_exact_p(a, b);
    const double approx = stats::detail::rank_sum_normal_p(a, b);
    CHECK(std::fabs(exact - approx) < 0.05);
  }
}

TEST_CASE("cvm: perfect grid hits 1/(12n) before the 1/n normalization") {
  for (std::size_t n : {1u, 5u, 100u}) {
    std::vector<double> grid;
    for (std::size_t i = 1; i <= n; ++i) {
      grid.push_back((2.0 * static_cast<double>(i) - 1.0) / (2.0 * static_cast<double>(n)));
    }
    const double omega2 = stats::cvm_uniform(grid) * static_cast<double>(n);
    CHECK(std::fabs(omega2 - 1.0 / (12.0 * static_cast<double>(n))) < 1e-12);
  }
}

TEST_CASE("cvm: single value at zero gives 1/3") {
  const std::vector<double> v{0.0};
  CHECK(stats::cvm_uniform(v) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("cvm: uniform random values stay below 3/n") {
  Rng rng(7);
  std::vector<double> values;
  for (int i = 0; i < 1000; ++i) values.push_back(rng.next_double());
  CHECK(stats::cvm_uniform(values) < 3.0 / 1000.0);
}

TEST_CASE("cvm rejects values outside [0,1]") {
  const std::vector<double> bad{0.5, 1.5};
  CHECK_THROWS(stats::cvm_uniform(bad));
}

TEST_CASE("mean_ci: constant sample has zero width") {
  const std::vector<double> v{2.0, 2.0, 2.0};
  auto [m, half] = stats::mean_ci(v);
  CHECK(m == doctest::Approx(2.0));
  CHECK(half == doctest::Approx(0.0));
}

TEST_CASE("mean_ci: {0,1} at 95% uses t(0.975, df=1)") {
  const std::vector<double> v{0.0, 1.0};
  auto [m, half] = stats::mean_ci(v, 0.95);
  CHECK(m == doctest::Approx(0.5));
  CHECK(half == doctest::Approx(12.7062047364 * 0.5).epsilon(1e-6));
}

TEST_CASE("mean_ci: 95% interval covers the true mean in most repetitions") {
  Rng rng(123);
  int covered = 0;
  const int reps = 500;
  for (int rep = 0; rep < reps; ++rep) {
    std::vector<double> values;
    for (int i = 0; i < 1000; ++i) values.push_back(rng.next_double());
    auto [m, half] = stats::mean_ci(values, 0.95);
    if (std::fabs(m - 0.5) <= half) ++covered;
  }
  CHECK(covered >= static_cast<int>(0.93 * reps));
}

TEST_CASE("student t quantile inverts the cdf") {
  for (double df : {1.0, 4.0, 29.0}) {
    for (double p : {0.6, 0.9, 0.975, 0.999}) {
      const double q = stats::student_t_quantile(p, df);
      CHECK(stats::student_t_cdf(q, df) == doctest::Approx(p).epsilon(1e-9));
    }
  }
}

}  // TEST_SUITE
