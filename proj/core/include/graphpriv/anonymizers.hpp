#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include <graphpriv/graph.hpp>
#include <graphpriv/rng.hpp>

namespace graphpriv {

enum class AnonymizerKind { id_removal, edge_switch, k_da, dp, random_walk, t_means };

std::string anonymizer_name(AnonymizerKind kind);
AnonymizerKind anonymizer_from_name(const std::string& name);

struct AnonymizerConfig {
  AnonymizerKind kind = AnonymizerKind::id_removal;
  double switch_fraction = 0.05;   // Switch: portion of edges to swap
  std::size_t k = 5;               // k-DA
  double epsilon = 1.0;            // DP
  std::size_t walk_distance = 2;   // Random Walk
  std::size_t tmeans_max_size = 30;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Counters for the lossy corners of the anonymizers: swaps abandoned after
/// retry exhaustion, degree deficits that could not be wired, and dK-2 edges
/// dropped during regeneration.
struct AnonymizeInfo {
  std::size_t switch_skipped = 0;
  std::size_t kda_residual = 0;
  std::size_t tmeans_residual = 0;
  std::size_t dp_dropped_edges = 0;
  bool dp_empty_series = false;
};

/// Runs the configured anonymizer, then removes identifiers by permuting node
/// ids. The returned mapping is the ground truth original -> anonymized.
std::pair<Graph, NodeMapping> anonymize(const Graph& g, const AnonymizerConfig& cfg,
                                        AnonymizeInfo* info = nullptr);

/// Double-edge switches: floor(r * |E|) accepted swaps of edge pairs
/// (a,b),(c,d) -> (a,d),(c,b). Proposals creating self-loops or duplicates
/// are rejected and retried; steps that exhaust retries are skipped and
/// counted. Node count, edge count, and degree sequence are preserved.
Graph anonymize_switch(const Graph& g, double r, Rng& rng,
                       std::size_t* skipped = nullptr);

/// Greedy k-degree anonymization by edge addition: groups the descending
/// degree sequence into runs of size >= k, raises every member to the group
/// maximum, and wires deficits pairwise (highest deficit first, falling back
/// to at-target partners). An odd total deficit is resolved by raising one
/// working target. residual reports the total deviation from the target
/// sequence; zero means the output degree sequence is k-anonymous.
Graph anonymize_kda(const Graph& g, std::size_t k, std::size_t* residual = nullptr);

/// dK-2 joint degree series: count of edges per unordered degree pair.
using Dk2Series = std::map<std::pair<std::size_t, std::size_t>, std::int64_t>;
Dk2Series dk2_series(const Graph& g);

/// Differentially private regeneration: Laplace(4/eps) noise on the dK-2
/// series (global sensitivity 4), rounded and clamped, then 2K construction
/// by stub matching within degree-pair classes with swap-based repair of
/// collisions. Node count is preserved.
Graph anonymize_dp(const Graph& g, double epsilon, Rng& rng,
                   AnonymizeInfo* info = nullptr);

/// For every vertex, adds an edge to the endpoint of a t-hop random walk
/// (skipping self-loops and duplicates), then deletes that many original
/// edges uniformly so |E| is preserved.
Graph anonymize_random_walk(const Graph& g, std::size_t t, Rng& rng);

/// Degree clustering: 1-D k-means over degree values with cluster sizes
/// bounded by max_size (oversized clusters split at their degree median),
/// then edits edges so member degrees approach the cluster center degree.
/// Tie-breaks are deterministic, so no rng is needed.
Graph anonymize_tmeans(const Graph& g, std::size_t max_size,
                       std::size_t* residual = nullptr);

}  // namespace graphpriv
