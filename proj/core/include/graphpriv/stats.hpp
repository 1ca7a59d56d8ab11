#pragma once

#include <span>
#include <utility>

namespace graphpriv::stats {

/// Result of a two-sample location test.
struct TestOutcome {
  double p_value = 1.0;
  int mean_diff_sign = 0;  // sign of mean(a) - mean(b)
  bool significant = false;

  int sign_if_significant() const { return significant ? mean_diff_sign : 0; }
};

/// Two-sided Welch unequal-variance t-test with Welch-Satterthwaite degrees
/// of freedom. Degenerate zero-variance samples give p = 1 (equal means) or
/// p = 0 (unequal means). Requires at least 2 values per sample.
TestOutcome welch_t_test(std::span<const double> a, std::span<const double> b,
                         double alpha = 0.05);

/// Two-sided Wilcoxon-Mann-Whitney rank-sum test. Uses exact enumeration of
/// all group assignments when |a|+|b| <= 12, otherwise the normal
/// approximation with midranks, tie correction, and continuity correction.
TestOutcome rank_sum_test(std::span<const double> a, std::span<const double> b,
                          double alpha = 0.05);

/// Cramer-von Mises statistic against U(0,1), divided by the sample count:
/// omega^2 = 1/(12n) + sum((2i-1)/(2n) - x_(i))^2, returned as omega^2 / n.
/// Values must lie in [0,1].
double cvm_uniform(std::span<const double> values);

/// Student-t confidence interval for the mean: (mean, half_width).
std::pair<double, double> mean_ci(std::span<const double> values,
                                  double confidence = 0.95);

// Numeric building blocks, exposed for reuse and cross-checks in tests.
double mean(std::span<const double> v);
double sample_variance(std::span<const double> v);
double normal_cdf(double z);
double regularized_incomplete_beta(double a, double b, double x);
double student_t_cdf(double t, double df);
double student_t_quantile(double p, double df);

namespace detail {
// The two rank-sum p-value routes, exposed so tests can compare them on the
// same data.
double rank_sum_exact_p(std::span<const double> a, std::span<const double> b);
double rank_sum_normal_p(std::span<const double> a, std::span<const double> b);
}  // namespace detail

}  // namespace graphpriv::stats
