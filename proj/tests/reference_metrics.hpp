#pragma once

// Straight-line re-implementation of every privacy-metric formula, used as
// the dual-implementation oracle by the unit and acceptance suites. Kept
// deliberately independent from the library path: the I/O is the same
// estimate, the arithmetic is written out longhand.

#include <cmath>
#include <map>
#include <string>

#include <graphpriv/estimate.hpp>

namespace metric_oracle {

using graphpriv::AdversaryEstimate;
using graphpriv::NodeId;

struct Reference {
  std::map<std::string, double> per_graph;
  std::map<std::string, std::map<NodeId, double>> per_node;
};

Reference reference_evaluate(const AdversaryEstimate& e, double cutoff, double tau_h,
                             double tau_i) {
  Reference ref;
  const double n_total = static_cast<double>(e.total_nodes);
  const double l_cap =
      e.aux_node_count > 1 ? std::log(static_cast<double>(e.aux_node_count)) / std::log(2.0) : 0.0;

  double attempted = 0.0, correct = 0.0, max_mi = 0.0, sum_cond_ent = 0.0;
  double hidden = 0.0, innocent = 0.0;

  for (const auto& row : e.rows) {
    attempted += 1.0;
    const NodeId v = row.anon_id;
    const double n = static_cast<double>(row.candidates.size());

    double p_t = 0.0, p_max = 0.0, h1 = 0.0, sum_sq = 0.0;
    double ass = 0.0;
    NodeId argmax = row.candidates.front().first;
    double argmax_p = row.candidates.front().second;
    for (const auto& [id, p] : row.candidates) {
      if (row.true_aux && id == *row.true_aux) p_t = p;
      if (p > p_max) p_max = p;
      if (p > argmax_p) {
        argmax_p = p;
        argmax = id;
      }
      if (p > 0.0) {
        h1 -= p * std::log(p) / std::log(2.0);
        ass += 1.0;
      }
      sum_sq += p * p;
    }
    if (row.true_aux && argmax == *row.true_aux) correct += 1.0;

    ref.per_node["anonymity_set_size"][v] = ass;
    ref.per_node["entropy"][v] = h1;
    ref.per_node["max_entropy"][v] = ass > 0.0 ? std::log(ass) / std::log(2.0) : 0.0;
    ref.per_node["min_entropy"][v] = p_max > 0.0 ? -std::log(p_max) / std::log(2.0) : 0.0;
    ref.per_node["collision_entropy"][v] =
        sum_sq > 0.0 ? -std::log(sum_sq) / std::log(2.0) : 0.0;
    ref.per_node["normalized_entropy"][v] =
        ass > 1.0 ? h1 / (std::log(ass) / std::log(2.0)) : 0.0;
    ref.per_node["inherent_privacy"][v] = std::pow(2.0, h1);

    double kept = 0.0;
    for (const auto& [id, p] : row.candidates) {
      (void)id;
      if (p >= cutoff) kept += p;
    }
    double hq = 0.0;
    if (kept > 0.0) {
      for (const auto& [id, p] : row.candidates) {
        (void)id;
        if (p >= cutoff && p > 0.0) hq -= (p / kept) * std::log(p / kept) / std::log(2.0);
      }
    }
    ref.per_node["quantiles_on_entropy"][v] = hq;

    const double cond_ent = p_t > 0.0 ? h1 : l_cap;
    sum_cond_ent += cond_ent;
    ref.per_node["conditional_entropy"][v] = cond_ent;
    ref.per_node["conditional_privacy"][v] = std::pow(2.0, cond_ent);

    const double surprisal = p_t > 0.0 ? -std::log(p_t) / std::log(2.0) : l_cap;
    ref.per_node["information_surprisal"][v] = surprisal;
    ref.per_node["relative_entropy"][v] = surprisal;

    const double mi = std::max(0.0, std::log(n) / std::log(2.0) - h1);
    ref.per_node["mutual_information"][v] = mi;
    max_mi = std::max(max_mi, mi);

    // Pearson correlation between the probability vector and the indicator.
    {
      double sp = 0.0, sy = 0.0, spy = 0.0, spp = 0.0, syy = 0.0;
      for (const auto& [id, p] : row.candidates) {
        const double y = (row.true_aux && id == *row.true_aux) ? 1.0 : 0.0;
        sp += p;
        sy += y;
        spy += p * y;
        spp += p * p;
        syy += y * y;
      }
      const double num = n * spy - sp * sy;
      const double den = std::sqrt(n * spp - sp * sp) * std::sqrt(n * syy - sy * sy);
      ref.per_node["pearson_correlation"][v] = den > 1e-30 ? num / den : 0.0;
    }

    // Incorrectness as the expected estimation error sum(p_i * err_i); the
    // library computes the equivalent 1 - p_t, so agreement checks both.
    {
      double expectation = 0.0;
      for (const auto& [id, p] : row.candidates) {
        const double err = (row.true_aux && id == *row.true_aux) ? 0.0 : 1.0;
        expectation += p * err;
      }
      ref.per_node["incorrectness"][v] = expectation;
    }

    double mse = 0.0;
    for (const auto& [id, p] : row.candidates) {
      const double y = (row.true_aux && id == *row.true_aux) ? 1.0 : 0.0;
      mse += (p - y) * (p - y);
    }
    ref.per_node["mean_squared_error"][v] = mse / n;
    ref.per_node["absolute_error"][v] = p_max - p_t;

    // Normalized variance of (y - p) against the variance of y.
    {
      double mean_d = 0.0, mean_y = 0.0;
      for (const auto& [id, p] : row.candidates) {
        const double y = (row.true_aux && id == *row.true_aux) ? 1.0 : 0.0;
        mean_d += (y - p) / n;
        mean_y += y / n;
      }
      double var_d = 0.0, var_y = 0.0;
      for (const auto& [id, p] : row.candidates) {
        const double y = (row.true_aux && id == *row.true_aux) ? 1.0 : 0.0;
        var_d += (y - p - mean_d) * (y - p - mean_d);
        var_y += (y - mean_y) * (y - mean_y);
      }
      ref.per_node["normalized_variance"][v] =
          (n >= 2.0 && var_y > 0.0) ? var_d / var_y : 0.0;
    }

    if (p_max < tau_h) hidden += 1.0;
    if (p_t < tau_i) innocent += 1.0;
  }

  ref.per_graph["amount_leaked_information"] = correct;
  ref.per_graph["loss_of_anonymity"] = max_mi;
  ref.per_graph["conditional_privacy_loss"] =
      attempted > 0.0 && n_total > 0.0
          ? 1.0 - std::pow(2.0, sum_cond_ent / attempted) / n_total
          : 0.0;
  ref.per_graph["pct_incorrectly_classified"] =
      n_total > 0.0 ? (attempted - correct) / n_total : 0.0;
  ref.per_graph["adversary_success_rate"] = attempted > 0.0 ? correct / attempted : 0.0;
  ref.per_graph["adversary_overall_success"] = n_total > 0.0 ? correct / n_total : 0.0;
  ref.per_graph["hiding_property"] = hidden + (n_total - attempted);
  ref.per_graph["user_specified_innocence"] = innocent + (n_total - attempted);

  // Aggregate per-node metrics to their means.
  for (const auto& [name, values] : ref.per_node) {
    double sum = 0.0;
    for (const auto& [node, value] : values) {
      (void)node;
      sum += value;
    }
    ref.per_graph[name] = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
  }
  return ref;
}


}  // namespace metric_oracle
