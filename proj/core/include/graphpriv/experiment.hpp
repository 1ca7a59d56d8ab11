#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <graphpriv/anonymizers.hpp>
#include <graphpriv/deanonymizers.hpp>
#include <graphpriv/metrics.hpp>
#include <graphpriv/strength.hpp>
#include <graphpriv/suites.hpp>

namespace graphpriv {

struct ReplicationControl {
  std::size_t min_replications = 100;
  std::size_t max_replications = 1000;
  std::size_t batch_size = 25;
  double relative_error = 0.05;
  double confidence = 0.95;
  double timeout_seconds = 0.0;  // 0 disables the per-replication timeout
};

/// Full experiment grid: datasets x anonymizers x de-anonymizers x strength
/// types, each scenario swept over the strength schedule and replicated until
/// the confidence interval is tight enough.
struct ExperimentConfig {
  std::vector<std::string> datasets;  // edge-list paths
  std::vector<AnonymizerConfig> anonymizers;
  std::vector<DeanonConfig> deanonymizers;
  std::vector<std::size_t> seed_schedule{5, 10, 20, 35, 50, 100};
  std::vector<double> aux_schedule{0.6, 0.7, 0.8, 0.85, 0.9, 0.95};
  std::size_t default_seed_count = 50;
  double default_aux_ratio = 0.85;
  std::vector<std::string> strength_types{"seeds", "aux"};
  ReplicationControl replication;
  MetricParams metric_params;
  std::uint64_t master_seed = 0;
  std::size_t workers = 0;  // 0 = hardware concurrency
  bool per_node_dump = false;
  std::string output_dir = "graphpriv-out";

  void validate() const;
  std::string to_json() const;
  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);

  /// FNV-1a hash of the canonical JSON serialization.
  std::uint64_t hash() const;
};

struct ResultRecord {
  std::string scenario_id;
  int level = 0;  // 0-based index into the strength schedule
  int replication = 0;
  std::string metric;
  double value = 0.0;

  auto key() const { return std::tie(scenario_id, level, replication, metric); }
};

struct PerNodeRecord {
  std::string scenario_id;
  int level = 0;
  int replication = 0;
  std::string metric;
  NodeId node = 0;
  double value = 0.0;
};

struct SkippedReplication {
  std::string scenario_id;
  int level = 0;
  int replication = 0;
};

/// Append-only record container with a deterministic on-disk layout
/// (manifest.json + results.csv + optional per_node.csv / skipped.csv).
/// Identical configs and master seeds produce byte-identical stores.
class ResultStore {
 public:
  void set_config(const ExperimentConfig& cfg);
  void set_level_values(const std::string& scenario_id, std::vector<double> values);

  void add(ResultRecord record);
  void add_per_node(PerNodeRecord record);
  void add_skipped(SkippedReplication skipped);

  /// Sorts records into canonical order; called once after the run.
  void finalize();

  const std::vector<ResultRecord>& records() const { return records_; }
  const std::vector<PerNodeRecord>& per_node_records() const { return per_node_; }
  const std::vector<SkippedReplication>& skipped() const { return skipped_; }
  const std::map<std::string, std::vector<double>>& level_values() const { return levels_; }
  const std::string& config_json() const { return config_json_; }
  std::uint64_t config_hash() const { return config_hash_; }

  std::string manifest_json() const;

  void write(const std::string& dir) const;
  static ResultStore read(const std::string& dir);

 private:
  std::vector<ResultRecord> records_;
  std::vector<PerNodeRecord> per_node_;
  std::vector<SkippedReplication> skipped_;
  std::map<std::string, std::vector<double>> levels_;  // scenario -> level values
  std::string config_json_;
  std::uint64_t config_hash_ = 0;
};

/// Runs the full grid. Replications execute concurrently on immutable inputs
/// with per-replication seeds derived from the master seed, so results do not
/// depend on the worker count. The store is also written to cfg.output_dir.
ResultStore run_experiment(const ExperimentConfig& cfg);

/// One alternative matrix per scenario: rows are strength levels ascending,
/// columns the 26 registry metrics, entries the mean value over replications.
std::map<std::string, AlternativeMatrix> scenario_matrices(const ResultStore& store);

/// Per-scenario strength scores for every metric.
struct ScenarioStrength {
  ScenarioId id;
  std::string metric;
  StrengthScores scores;
};
std::vector<ScenarioStrength> compute_strength_scores(const ResultStore& store);

/// Emits the report files (strength_scores.csv, heatmap_monotonicity.csv,
/// boxplot_monotonicity.csv, suites.csv, summary.json) into out_dir.
void build_reports(const ResultStore& store, const std::string& out_dir);

/// Derives the library version string recorded in manifests.
const char* library_version();

}  // namespace graphpriv
