#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <graphpriv/graph.hpp>

namespace graphpriv {

/// Candidate probability distribution for one attempted anonymized node.
struct EstimateRow {
  NodeId anon_id = 0;
  std::optional<NodeId> true_aux;  // absent when the node has no counterpart
  std::vector<std::pair<NodeId, double>> candidates;  // (aux id, probability), aux ascending

  /// Argmax candidate, lowest aux id on ties.
  NodeId chosen() const;

  /// Probability assigned to the true candidate (0 when absent).
  double truth_probability() const;
};

/// Probabilistic output of a de-anonymization attack: one normalized
/// candidate distribution per attempted node, plus the context the privacy
/// metrics need (graph sizes, chunking).
struct AdversaryEstimate {
  std::vector<EstimateRow> rows;  // sorted by anon_id
  std::size_t total_nodes = 0;    // |V| of the anonymized graph
  std::size_t aux_node_count = 0; // |V| of the auxiliary graph
  std::optional<std::size_t> chunk_size_used;

  std::size_t attempted_count() const { return rows.size(); }

  /// Checks normalization (+-1e-9), argmax membership, and count bounds.
  void validate() const;

  /// JSON-lines dump: a meta record followed by one record per attempted
  /// node: {"anon_id":..,"true_aux_id":..|null,"candidates":[[aux,prob],..]}.
  void dump_jsonl(std::ostream& out) const;
  static AdversaryEstimate load_jsonl(std::istream& in);
};

/// Normalizes raw non-negative candidate scores to probabilities
/// (score / sum of scores). Returns an empty list when every score is zero,
/// marking the node unattempted. Negative scores are a contract violation.
std::vector<std::pair<NodeId, double>> normalize_scores(
    std::vector<std::pair<NodeId, double>> raw);

/// Degree-ordered chunking: both node sets sorted by degree descending
/// (lowest id on ties) and cut into consecutive chunks of chunk_size; chunk k
/// of the anonymized graph is matched only against chunk k of the auxiliary
/// graph. Trailing shorter or empty chunks are allowed.
struct ChunkPair {
  std::vector<NodeId> anon_nodes;
  std::vector<NodeId> aux_nodes;
};
std::vector<ChunkPair> chunk_partition(const Graph& anon, const Graph& aux,
                                       std::size_t chunk_size);

}  // namespace graphpriv
