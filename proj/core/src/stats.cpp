#include <graphpriv/stats.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include <graphpriv/errors.hpp>

namespace graphpriv::stats {

namespace {

constexpr double kEps = 1e-12;

int sign_of(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Continued fraction for the regularized incomplete beta (Lentz method).
double betacf(double a, double b, double x) {
  constexpr int max_iter = 300;
  constexpr double tiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 3e-16) break;
  }
  return h;
}

}  // namespace

double mean(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(ln_front) * betacf(a, b, x) / a;
  }
  return 1.0 - std::exp(ln_front) * betacf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  const double x = df / (df + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, x);
  return t > 0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, double df) {
  if (p <= 0.0 || p >= 1.0) throw config_error("student_t_quantile: p must be in (0,1)");
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -student_t_quantile(1.0 - p, df);
  double lo = 0.0, hi = 1.0;
  while (student_t_cdf(hi, df) < p && hi < 1e12) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_cdf(mid, df) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

TestOutcome welch_t_test(std::span<const double> a, std::span<const double> b,
                         double alpha) {
  if (a.size() < 2 || b.size() < 2) throw config_error("welch_t_test: need >= 2 values per sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = mean(a), mb = mean(b);
  const double va = sample_variance(a), vb = sample_variance(b);

  TestOutcome out;
  out.mean_diff_sign = sign_of(ma - mb);
  const double se2 = va / na + vb / nb;
  if (se2 <= 0.0) {
    out.p_value = (ma == mb) ? 1.0 : 0.0;
  } else {
    const double t = (ma - mb) / std::sqrt(se2);
    const double df = se2 * se2 /
                      (va * va / (na * na * (na - 1.0)) + vb * vb / (nb * nb * (nb - 1.0)));
    out.p_value = regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
  }
  out.p_value = std::clamp(out.p_value, 0.0, 1.0);
  out.significant = out.p_value < alpha;
  return out;
}

namespace {

// 2U statistic (doubled to stay integral in the presence of 0.5 tie credits).
std::int64_t double_u_statistic_impl(std::span<const double> a, std::span<const double> b) {
  std::int64_t u2 = 0;
  for (double x : a) {
    for (double y : b) {
      if (x > y) {
        u2 += 2;
      } else if (x == y) {
        u2 += 1;
      }
    }
  }
  return u2;
}

}  // namespace

namespace detail {

double rank_sum_exact_p(std::span<const double> a, std::span<const double> b) {
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const int n = static_cast<int>(pooled.size());
  const int na = static_cast<int>(a.size());
  const std::int64_t observed = double_u_statistic_impl(a, b);

  std::int64_t total = 0, at_most = 0, at_least = 0;
  std::vector<double> ga(na), gb(n - na);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != na) continue;
    int ia = 0, ib = 0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        ga[ia++] = pooled[i];
      } else {
        gb[ib++] = pooled[i];
      }
    }
    const std::int64_t u2 = double_u_statistic_impl(ga, gb);
    ++total;
    if (u2 <= observed) ++at_most;
    if (u2 >= observed) ++at_least;
  }
  const double lo = static_cast<double>(at_most) / static_cast<double>(total);
  const double hi = static_cast<double>(at_least) / static_cast<double>(total);
  return std::min(1.0, 2.0 * std::min(lo, hi));
}

double rank_sum_normal_p(std::span<const double> a, std::span<const double> b) {
  const std::size_t na = a.size(), nb = b.size(), n = na + nb;
  std::vector<std::pair<double, int>> pooled;  // (value, group)
  pooled.reserve(n);
  for (double x : a) pooled.emplace_back(x, 0);
  for (double x : b) pooled.emplace_back(x, 1);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });

  // Midranks and the tie correction term sum(t^3 - t).
  double rank_sum_a = 0.0;
  double tie_term = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && pooled[j].first == pooled[i].first) ++j;
    const double t = static_cast<double>(j - i);
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].second == 0) rank_sum_a += midrank;
    }
    tie_term += t * t * t - t;
    i = j;
  }

  const double dn = static_cast<double>(n);
  const double dna = static_cast<double>(na), dnb = static_cast<double>(nb);
  const double u = rank_sum_a - dna * (dna + 1.0) / 2.0;
  const double mu = dna * dnb / 2.0;
  const double var = dna * dnb / 12.0 *
                     ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
  if (var <= 0.0) return 1.0;
  const double cc = u > mu ? -0.5 : (u < mu ? 0.5 : 0.0);
  const double z = (u - mu + cc) / std::sqrt(var);
  return std::clamp(2.0 * (1.0 - normal_cdf(std::fabs(z))), 0.0, 1.0);
}

}  // namespace detail

TestOutcome rank_sum_test(std::span<const double> a, std::span<const double> b,
                          double alpha) {
  if (a.size() < 2 || b.size() < 2) throw config_error("rank_sum_test: need >= 2 values per sample");
  TestOutcome out;
  out.mean_diff_sign = sign_of(mean(a) - mean(b));
  out.p_value = (a.size() + b.size() <= 12) ? detail::rank_sum_exact_p(a, b)
                                            : detail::rank_sum_normal_p(a, b);
  out.significant = out.p_value < alpha;
  return out;
}

double cvm_uniform(std::span<const double> values) {
  if (values.empty()) throw config_error("cvm_uniform: need >= 1 value");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double omega2 = 1.0 / (12.0 * n);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double x = sorted[i];
    if (x < -kEps || x > 1.0 + kEps) throw config_error("cvm_uniform: value outside [0,1]");
    const double grid = (2.0 * static_cast<double>(i + 1) - 1.0) / (2.0 * n);
    omega2 += (grid - x) * (grid - x);
  }
  return omega2 / n;
}

std::pair<double, double> mean_ci(std::span<const double> values, double confidence) {
  if (values.size() < 2) throw config_error("mean_ci: need >= 2 values");
  if (confidence <= 0.0 || confidence >= 1.0) throw config_error("mean_ci: confidence must be in (0,1)");
  const double n = static_cast<double>(values.size());
  const double m = mean(values);
  const double var = sample_variance(values);
  if (var <= 0.0) return {m, 0.0};
  const double t = student_t_quantile(0.5 * (1.0 + confidence), n - 1.0);
  return {m, t * std::sqrt(var / n)};
}

}  // namespace graphpriv::stats
