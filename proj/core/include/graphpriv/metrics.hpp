#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <graphpriv/estimate.hpp>

namespace graphpriv {

enum class MetricCategory { uncertainty, gain, error, similarity, success };
enum class Direction { higher_better, lower_better };
enum class MetricLevel { per_node, per_graph };

/// Registry entry for one privacy metric: direction says whether high or low
/// values indicate high privacy, level whether the metric yields one value
/// per node or one per graph, and the flags record ground-truth need and
/// sensitivity to candidate-set chunking.
struct MetricDescriptor {
  std::string_view name;
  MetricCategory category;
  Direction direction;
  MetricLevel level;
  bool needs_truth;
  bool chunk_sensitive;
};

/// The fixed registry of 26 metrics.
const std::array<MetricDescriptor, 26>& metric_registry();
const MetricDescriptor& metric_by_name(std::string_view name);

struct MetricParams {
  double quantile_cutoff = 0.01;  // probability cutoff for quantiles-on-entropy
  double tau_hiding = 0.5;
  double tau_innocence = 0.5;
};

struct MetricResult {
  const MetricDescriptor* descriptor = nullptr;
  double parameter = 0.0;  // quantile cutoff / threshold where applicable
  /// Values per attempted node (empty for per-graph metrics).
  std::vector<std::pair<NodeId, double>> per_node;
  /// For per-graph metrics the metric value; for per-node metrics the mean
  /// over attempted nodes, used for scenario aggregation.
  double per_graph = 0.0;
  /// True when no node was attempted and per_graph defaults to 0.
  bool empty_sample = false;
};

class MetricSet {
 public:
  explicit MetricSet(std::vector<MetricResult> results) : results_(std::move(results)) {}

  const std::vector<MetricResult>& all() const { return results_; }
  const MetricResult& at(std::string_view name) const;

 private:
  std::vector<MetricResult> results_;
};

/// Evaluates all 26 registry metrics on one adversary estimate. Per-node
/// metrics also carry their mean-over-attempted aggregate.
MetricSet evaluate_all(const AdversaryEstimate& e, const MetricParams& params = {});

// Category evaluators. uncertainty_metrics emits one quantiles-on-entropy
// result per requested cutoff.
std::vector<MetricResult> uncertainty_metrics(const AdversaryEstimate& e,
                                              std::span<const double> quantile_cutoffs);
std::vector<MetricResult> gain_metrics(const AdversaryEstimate& e);
std::vector<MetricResult> error_metrics(const AdversaryEstimate& e);
std::vector<MetricResult> similarity_metrics(const AdversaryEstimate& e);
std::vector<MetricResult> success_metrics(const AdversaryEstimate& e, double tau_hiding,
                                          double tau_innocence);

}  // namespace graphpriv
