#include <graphpriv/metrics.hpp>

#include <algorithm>
#include <cmath>

#include <graphpriv/errors.hpp>

namespace graphpriv {

namespace {

using MC = MetricCategory;
using Dir = Direction;
using ML = MetricLevel;

constexpr std::array<MetricDescriptor, 26> kRegistry{{
    // Uncertainty                                            truth  chunk
    {"anonymity_set_size", MC::uncertainty, Dir::higher_better, ML::per_node, false, true},
    {"collision_entropy", MC::uncertainty, Dir::higher_better, ML::per_node, false, true},
    {"conditional_entropy", MC::uncertainty, Dir::higher_better, ML::per_node, true, false},
    {"conditional_privacy", MC::uncertainty, Dir::higher_better, ML::per_node, true, false},
    {"entropy", MC::uncertainty, Dir::higher_better, ML::per_node, false, true},
    {"inherent_privacy", MC::uncertainty, Dir::higher_better, ML::per_node, false, true},
    {"max_entropy", MC::uncertainty, Dir::higher_better, ML::per_node, false, true},
    {"min_entropy", MC::uncertainty, Dir::higher_better, ML::per_node, false, true},
    {"normalized_entropy", MC::uncertainty, Dir::higher_better, ML::per_node, false, false},
    {"quantiles_on_entropy", MC::uncertainty, Dir::higher_better, ML::per_node, false, true},
    // Information gain / loss
    {"amount_leaked_information", MC::gain, Dir::lower_better, ML::per_graph, true, false},
    {"conditional_privacy_loss", MC::gain, Dir::lower_better, ML::per_graph, true, true},
    {"information_surprisal", MC::gain, Dir::lower_better, ML::per_node, true, false},
    {"loss_of_anonymity", MC::gain, Dir::lower_better, ML::per_graph, true, true},
    {"mutual_information", MC::gain, Dir::lower_better, ML::per_node, true, true},
    {"pearson_correlation", MC::gain, Dir::lower_better, ML::per_node, true, false},
    {"relative_entropy", MC::gain, Dir::higher_better, ML::per_node, true, false},
    // Error
    {"absolute_error", MC::error, Dir::higher_better, ML::per_node, true, false},
    {"incorrectness", MC::error, Dir::higher_better, ML::per_node, true, false},
    {"mean_squared_error", MC::error, Dir::higher_better, ML::per_node, true, false},
    {"pct_incorrectly_classified", MC::error, Dir::higher_better, ML::per_graph, true, false},
    // Similarity
    {"normalized_variance", MC::similarity, Dir::higher_better, ML::per_node, true, false},
    // Success
    {"adversary_success_rate", MC::success, Dir::lower_better, ML::per_graph, true, false},
    {"adversary_overall_success", MC::success, Dir::lower_better, ML::per_graph, true, false},
    {"hiding_property", MC::success, Dir::higher_better, ML::per_graph, false, false},
    {"user_specified_innocence", MC::success, Dir::higher_better, ML::per_graph, false, false},
}};

// Shared per-row quantities.
struct RowFacts {
  const EstimateRow* row;
  std::size_t n = 0;  // candidate count
  std::size_t ass = 0;
  double p_max = 0.0;
  double p_truth = 0.0;
  double h1 = 0.0;      // Shannon entropy, bits
  double sum_p2 = 0.0;
};

std::vector<RowFacts> row_facts(const AdversaryEstimate& e) {
  std::vector<RowFacts> facts;
  facts.reserve(e.rows.size());
  for (const auto& row : e.rows) {
    RowFacts f;
    f.row = &row;
    f.n = row.candidates.size();
    for (const auto& [id, p] : row.candidates) {
      f.p_max = std::max(f.p_max, p);
      f.sum_p2 += p * p;
      if (p > 0.0) {
        f.h1 -= p * std::log2(p);
        ++f.ass;
      }
      if (row.true_aux && id == *row.true_aux) f.p_truth = p;
    }
    facts.push_back(f);
  }
  return facts;
}

double truth_cap(const AdversaryEstimate& e) {
  return e.aux_node_count > 1 ? std::log2(static_cast<double>(e.aux_node_count)) : 0.0;
}

double conditional_entropy_of(const RowFacts& f, double cap) {
  return f.p_truth > 0.0 ? f.h1 : cap;
}

template <typename Fn>
MetricResult per_node_metric(std::string_view name, const std::vector<RowFacts>& facts,
                             Fn&& value, double parameter = 0.0) {
  MetricResult r;
  r.descriptor = &metric_by_name(name);
  r.parameter = parameter;
  r.per_node.reserve(facts.size());
  double sum = 0.0;
  for (const auto& f : facts) {
    const double v = value(f);
    r.per_node.emplace_back(f.row->anon_id, v);
    sum += v;
  }
  if (facts.empty()) {
    r.empty_sample = true;
  } else {
    r.per_graph = sum / static_cast<double>(facts.size());
  }
  return r;
}

MetricResult per_graph_metric(std::string_view name, double value, bool empty = false) {
  MetricResult r;
  r.descriptor = &metric_by_name(name);
  r.per_graph = value;
  r.empty_sample = empty;
  return r;
}

std::size_t correct_count(const std::vector<RowFacts>& facts) {
  std::size_t c = 0;
  for (const auto& f : facts) {
    if (f.row->true_aux && f.row->chosen() == *f.row->true_aux) ++c;
  }
  return c;
}

double pearson_of(const EstimateRow& row) {
  const std::size_t n = row.candidates.size();
  if (n < 2) return 0.0;
  double mp = 0.0, my = 0.0;
  for (const auto& [id, p] : row.candidates) {
    mp += p;
    if (row.true_aux && id == *row.true_aux) my += 1.0;
  }
  mp /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double cov = 0.0, vp = 0.0, vy = 0.0;
  for (const auto& [id, p] : row.candidates) {
    const double y = (row.true_aux && id == *row.true_aux) ? 1.0 : 0.0;
    cov += (p - mp) * (y - my);
    vp += (p - mp) * (p - mp);
    vy += (y - my) * (y - my);
  }
  if (vp <= 0.0 || vy <= 0.0) return 0.0;
  return cov / std::sqrt(vp * vy);
}

double normalized_variance_of(const EstimateRow& row) {
  const std::size_t n = row.candidates.size();
  if (n < 2) return 0.0;
  double md = 0.0, my = 0.0;
  for (const auto& [id, p] : row.candidates) {
    const double y = (row.true_aux && id == *row.true_aux) ? 1.0 : 0.0;
    md += y - p;
    my += y;
  }
  md /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double vd = 0.0, vy = 0.0;
  for (const auto& [id, p] : row.candidates) {
    const double y = (row.true_aux && id == *row.true_aux) ? 1.0 : 0.0;
    vd += (y - p - md) * (y - p - md);
    vy += (y - my) * (y - my);
  }
  if (vy <= 0.0) return 0.0;
  return vd / vy;  // the (n-1) denominators cancel
}

double quantile_entropy_of(const EstimateRow& row, double cutoff) {
  double kept = 0.0;
  for (const auto& [id, p] : row.candidates) {
    (void)id;
    if (p >= cutoff) kept += p;
  }
  if (kept <= 0.0) return 0.0;
  double h = 0.0;
  for (const auto& [id, p] : row.candidates) {
    (void)id;
    if (p >= cutoff && p > 0.0) {
      const double q = p / kept;
      h -= q * std::log2(q);
    }
  }
  return h;
}

}  // namespace

const std::array<MetricDescriptor, 26>& metric_registry() { return kRegistry; }

const MetricDescriptor& metric_by_name(std::string_view name) {
  for (const auto& d : kRegistry) {
    if (d.name == name) return d;
  }
  throw config_error("unknown metric: " + std::string(name));
}

const MetricResult& MetricSet::at(std::string_view name) const {
  for (const auto& r : results_) {
    if (r.descriptor->name == name) return r;
  }
  throw config_error("metric not evaluated: " + std::string(name));
}

std::vector<MetricResult> uncertainty_metrics(const AdversaryEstimate& e,
                                              std::span<const double> quantile_cutoffs) {
  const auto facts = row_facts(e);
  const double cap = truth_cap(e);

  std::vector<MetricResult> out;
  out.push_back(per_node_metric("anonymity_set_size", facts,
                                [](const RowFacts& f) { return static_cast<double>(f.ass); }));
  out.push_back(per_node_metric("collision_entropy", facts, [](const RowFacts& f) {
    return f.sum_p2 > 0.0 ? -std::log2(f.sum_p2) : 0.0;
  }));
  out.push_back(per_node_metric("conditional_entropy", facts, [&](const RowFacts& f) {
    return conditional_entropy_of(f, cap);
  }));
  out.push_back(per_node_metric("conditional_privacy", facts, [&](const RowFacts& f) {
    return std::exp2(conditional_entropy_of(f, cap));
  }));
  out.push_back(per_node_metric("entropy", facts, [](const RowFacts& f) { return f.h1; }));
  out.push_back(per_node_metric("inherent_privacy", facts,
                                [](const RowFacts& f) { return std::exp2(f.h1); }));
  out.push_back(per_node_metric("max_entropy", facts, [](const RowFacts& f) {
    return f.ass > 0 ? std::log2(static_cast<double>(f.ass)) : 0.0;
  }));
  out.push_back(per_node_metric("min_entropy", facts, [](const RowFacts& f) {
    return f.p_max > 0.0 ? -std::log2(f.p_max) : 0.0;
  }));
  out.push_back(per_node_metric("normalized_entropy", facts, [](const RowFacts& f) {
    if (f.ass <= 1) return 0.0;
    return f.h1 / std::log2(static_cast<double>(f.ass));
  }));
  for (double cutoff : quantile_cutoffs) {
    out.push_back(per_node_metric(
        "quantiles_on_entropy", facts,
        [&](const RowFacts& f) { return quantile_entropy_of(*f.row, cutoff); }, cutoff));
  }
  return out;
}

std::vector<MetricResult> gain_metrics(const AdversaryEstimate& e) {
  const auto facts = row_facts(e);
  const double cap = truth_cap(e);
  const std::size_t a = facts.size();
  const std::size_t c = correct_count(facts);
  const double n_total = static_cast<double>(e.total_nodes);

  std::vector<MetricResult> out;
  out.push_back(per_graph_metric("amount_leaked_information", static_cast<double>(c), a == 0));

  // Conditional privacy loss: fraction of privacy lost relative to a uniform
  // guess over the whole graph, via the mean conditional entropy.
  double cpl = 0.0;
  if (a > 0 && e.total_nodes > 0) {
    double mean_ce = 0.0;
    for (const auto& f : facts) mean_ce += conditional_entropy_of(f, cap);
    mean_ce /= static_cast<double>(a);
    cpl = 1.0 - std::exp2(mean_ce) / n_total;
  }
  out.push_back(per_graph_metric("conditional_privacy_loss", cpl, a == 0));

  auto surprisal = [&](const RowFacts& f) {
    return f.p_truth > 0.0 ? -std::log2(f.p_truth) : cap;
  };
  out.push_back(per_node_metric("information_surprisal", facts, surprisal));

  auto mutual_information = [](const RowFacts& f) {
    const double h0 = std::log2(static_cast<double>(f.n));
    return std::max(0.0, h0 - f.h1);
  };
  double loss = 0.0;
  for (const auto& f : facts) loss = std::max(loss, mutual_information(f));
  out.push_back(per_graph_metric("loss_of_anonymity", loss, a == 0));
  out.push_back(per_node_metric("mutual_information", facts, mutual_information));
  out.push_back(per_node_metric("pearson_correlation", facts,
                                [](const RowFacts& f) { return pearson_of(*f.row); }));
  // With a degenerate point-mass truth, KL(y || p) collapses to -log2 p_t,
  // numerically identical to the surprisal.
  out.push_back(per_node_metric("relative_entropy", facts, surprisal));
  return out;
}

std::vector<MetricResult> error_metrics(const AdversaryEstimate& e) {
  const auto facts = row_facts(e);
  const std::size_t a = facts.size();
  const std::size_t c = correct_count(facts);

  std::vector<MetricResult> out;
  out.push_back(per_node_metric("absolute_error", facts,
                                [](const RowFacts& f) { return f.p_max - f.p_truth; }));
  out.push_back(per_node_metric("incorrectness", facts,
                                [](const RowFacts& f) { return 1.0 - f.p_truth; }));
  out.push_back(per_node_metric("mean_squared_error", facts, [](const RowFacts& f) {
    double mse = 0.0;
    for (const auto& [id, p] : f.row->candidates) {
      const double y = (f.row->true_aux && id == *f.row->true_aux) ? 1.0 : 0.0;
      mse += (p - y) * (p - y);
    }
    return mse / static_cast<double>(f.n);
  }));
  const double pct = e.total_nodes > 0
                         ? static_cast<double>(a - c) / static_cast<double>(e.total_nodes)
                         : 0.0;
  out.push_back(per_graph_metric("pct_incorrectly_classified", pct, a == 0));
  return out;
}

std::vector<MetricResult> similarity_metrics(const AdversaryEstimate& e) {
  const auto facts = row_facts(e);
  std::vector<MetricResult> out;
  out.push_back(per_node_metric("normalized_variance", facts, [](const RowFacts& f) {
    return normalized_variance_of(*f.row);
  }));
  return out;
}

std::vector<MetricResult> success_metrics(const AdversaryEstimate& e, double tau_hiding,
                                          double tau_innocence) {
  if (!(tau_hiding > 0.0) || tau_hiding > 1.0 || !(tau_innocence > 0.0) || tau_innocence > 1.0) {
    throw config_error("success_metrics: thresholds must be in (0,1]");
  }
  const auto facts = row_facts(e);
  const std::size_t a = facts.size();
  const std::size_t c = correct_count(facts);
  const std::size_t n = e.total_nodes;

  std::size_t hidden = n - a;     // unattempted nodes count as hidden
  std::size_t innocent = n - a;
  for (const auto& f : facts) {
    if (f.p_max < tau_hiding) ++hidden;
    if (f.p_truth < tau_innocence) ++innocent;
  }

  std::vector<MetricResult> out;
  out.push_back(per_graph_metric(
      "adversary_success_rate",
      a > 0 ? static_cast<double>(c) / static_cast<double>(a) : 0.0, a == 0));
  out.push_back(per_graph_metric(
      "adversary_overall_success",
      n > 0 ? static_cast<double>(c) / static_cast<double>(n) : 0.0, a == 0));
  out.push_back(per_graph_metric("hiding_property", static_cast<double>(hidden)));
  out.push_back(per_graph_metric("user_specified_innocence", static_cast<double>(innocent)));
  return out;
}

MetricSet evaluate_all(const AdversaryEstimate& e, const MetricParams& params) {
  const double cutoffs[] = {params.quantile_cutoff};
  auto uncertainty = uncertainty_metrics(e, cutoffs);
  auto gain = gain_metrics(e);
  auto error = error_metrics(e);
  auto similarity = similarity_metrics(e);
  auto success = success_metrics(e, params.tau_hiding, params.tau_innocence);

  std::vector<MetricResult> results;
  results.reserve(26);
  auto take = [&](std::vector<MetricResult>& from) {
    for (auto& r : from) results.push_back(std::move(r));
  };
  take(uncertainty);
  take(gain);
  take(error);
  take(similarity);
  take(success);

  // Keep registry order.
  std::sort(results.begin(), results.end(), [](const MetricResult& x, const MetricResult& y) {
    return x.descriptor - kRegistry.data() < y.descriptor - kRegistry.data();
  });
  return MetricSet(std::move(results));
}

}  // namespace graphpriv
