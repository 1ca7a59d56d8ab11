#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace graphpriv {

using NodeId = std::uint32_t;

/// Simple undirected graph over dense node ids 0..n-1.
///
/// Adjacency lists are sorted and deduplicated, self-loops are dropped at
/// construction, and every node carries a label mapping it back to the source
/// id it was loaded with. Instances are immutable after construction and safe
/// to share across threads.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Self-loops and duplicate edges are
  /// dropped. Labels default to the decimal node id when omitted.
  Graph(std::size_t node_count, const std::vector<std::pair<NodeId, NodeId>>& edges,
        std::vector<std::string> labels = {});

  std::size_t node_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const NodeId> neighbors(NodeId v) const { return adj_[v]; }
  std::size_t degree(NodeId v) const { return adj_[v].size(); }
  bool has_edge(NodeId u, NodeId v) const;

  const std::string& label(NodeId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// All edges as (u, v) pairs with u < v, ascending.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  std::vector<std::size_t> degree_sequence() const;

 private:
  std::vector<std::vector<NodeId>> adj_;
  std::vector<std::string> labels_;
  std::size_t edge_count_ = 0;
};

/// Partial bijection between two node id spaces (source -> target).
class NodeMapping {
 public:
  NodeMapping() = default;
  explicit NodeMapping(bool is_ground_truth) : is_ground_truth_(is_ground_truth) {}

  /// Adds a pair; throws if either endpoint is already mapped.
  void add(NodeId from, NodeId to);

  std::optional<NodeId> forward(NodeId from) const;
  std::optional<NodeId> inverse(NodeId to) const;
  bool contains(NodeId from) const { return fwd_.count(from) > 0; }

  std::size_t size() const { return fwd_.size(); }
  bool empty() const { return fwd_.empty(); }

  bool is_ground_truth() const { return is_ground_truth_; }
  void set_ground_truth(bool v) { is_ground_truth_ = v; }

  /// Pairs sorted by source id.
  std::vector<std::pair<NodeId, NodeId>> pairs() const;

 private:
  std::unordered_map<NodeId, NodeId> fwd_;
  std::unordered_map<NodeId, NodeId> inv_;
  bool is_ground_truth_ = false;
};

/// Graph statistics in the shape commonly reported for graph datasets.
/// Diameter and average shortest path are BFS estimates from sampled sources
/// (exact when the sample covers all nodes).
struct GraphStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t diameter = 0;
  double avg_degree = 0.0;
  double avg_shortest_path = 0.0;
  double clustering_coefficient = 0.0;
  double degree_gini = 0.0;
  std::uint64_t claws = 0;  // sum over nodes of C(degree, 3)

  static std::string csv_header();
  std::string csv_row(const std::string& dataset) const;
};

/// Parses a whitespace-separated edge list. Blank lines and lines starting
/// with '%' or '#' are skipped; tokens beyond the first two (weights,
/// timestamps) are ignored; a line with exactly one token is an error.
/// Source ids are mapped to dense ids in first-seen order.
Graph load_edge_list(const std::string& path);

/// Induced subgraph of the largest connected component, relabeled to dense
/// ids with labels preserved. Size ties are broken by the lexicographically
/// smallest label inside the component. Throws on an empty graph.
Graph largest_connected_component(const Graph& g);

/// Structurally identical graph under a uniform random id permutation, plus
/// the ground-truth old->new mapping. Labels are replaced with the new dense
/// ids: this is the identifier-removal primitive.
std::pair<Graph, NodeMapping> permute_node_ids(const Graph& g, std::uint64_t seed);

/// Samples ceil(ratio * n) nodes uniformly without replacement, takes the
/// induced subgraph, and keeps its largest connected component. The returned
/// mapping sends sampled-graph ids to ids in g.
std::pair<Graph, NodeMapping> sample_auxiliary(const Graph& g, double ratio,
                                               std::uint64_t seed);

/// Computes graph statistics. Requires a connected graph; distance stats use
/// BFS from path_sample random sources (exact when path_sample >= n).
GraphStats compute_graph_stats(const Graph& g, std::size_t path_sample,
                               std::uint64_t seed = 0);

/// Throws if the graph violates its invariants (sorted symmetric adjacency,
/// no self-loops or duplicates, label per node). Used by tests and debug
/// assertions on anonymizer outputs.
void validate_graph(const Graph& g);

/// Writes the graph as an edge list of dense ids (one "u v" line per edge).
void write_edge_list(const Graph& g, const std::string& path);

}  // namespace graphpriv
