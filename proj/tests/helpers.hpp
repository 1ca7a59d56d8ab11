#pragma once

// Shared fixtures for the test suites: small structured graphs, seeded random
// graph generators, and synthetic adversary estimates.

#include <string>
#include <utility>
#include <vector>

#include <graphpriv/estimate.hpp>
#include <graphpriv/graph.hpp>
#include <graphpriv/rng.hpp>

namespace testing_fixtures {

using graphpriv::AdversaryEstimate;
using graphpriv::EstimateRow;
using graphpriv::Graph;
using graphpriv::NodeId;
using graphpriv::Rng;

inline Graph path_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, edges);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 0; v < n; ++v) edges.emplace_back(v, static_cast<NodeId>((v + 1) % n));
  return Graph(n, edges);
}

inline Graph star_graph(std::size_t leaves) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph(leaves + 1, edges);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, edges);
}

inline Graph triangle() { return cycle_graph(3); }

// G(n, m)-style random graph with roughly the requested average degree.
inline Graph random_graph(std::size_t n, double avg_degree, std::uint64_t seed) {
  Rng rng(seed);
  const auto target = static_cast<std::size_t>(avg_degree * static_cast<double>(n) / 2.0);
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(target);
  std::size_t guard = 0;
  while (edges.size() < target && guard < 50 * target) {
    ++guard;
    const auto u = static_cast<NodeId>(rng.below(n));
    const auto v = static_cast<NodeId>(rng.below(n));
    if (u != v) edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  return Graph(n, edges);  // duplicates collapse in the constructor
}

// Preferential attachment: each new node attaches m edges to endpoints drawn
// from the running edge-endpoint list (degree-proportional).
inline Graph preferential_attachment(std::size_t n, std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<NodeId> endpoints;
  for (NodeId v = 1; v < n; ++v) {
    const std::size_t links = std::min<std::size_t>(m, v);
    for (std::size_t i = 0; i < links; ++i) {
      NodeId target;
      if (endpoints.empty()) {
        target = static_cast<NodeId>(rng.below(v));
      } else {
        target = endpoints[static_cast<std::size_t>(rng.below(endpoints.size()))];
      }
      if (target == v) target = static_cast<NodeId>(rng.below(v));
      edges.emplace_back(v, target);
      endpoints.push_back(v);
      endpoints.push_back(target);
    }
  }
  return Graph(n, edges);
}

// Synthetic adversary estimate with varied candidate sets; truth is present
// in most rows, sometimes missing from the candidate set, sometimes absent
// entirely.
inline AdversaryEstimate random_estimate(std::uint64_t seed, std::size_t total_nodes = 20,
                                         std::size_t aux_nodes = 32) {
  Rng rng(seed);
  AdversaryEstimate est;
  est.total_nodes = total_nodes;
  est.aux_node_count = aux_nodes;

  const std::size_t attempted = rng.below(total_nodes + 1);
  auto anon_ids = rng.sample(static_cast<std::uint32_t>(total_nodes),
                             static_cast<std::uint32_t>(attempted));
  for (auto anon_id : anon_ids) {
    EstimateRow row;
    row.anon_id = anon_id;
    const std::size_t n_cand = 1 + rng.below(6);
    auto aux_ids = rng.sample(static_cast<std::uint32_t>(aux_nodes),
                              static_cast<std::uint32_t>(n_cand));
    std::vector<std::pair<NodeId, double>> raw;
    for (auto aux_id : aux_ids) {
      raw.emplace_back(aux_id, rng.next_double());
    }
    raw.front().second += 0.05;  // keep at least one positive score
    const auto roll = rng.below(10);
    if (roll < 7) {
      row.true_aux = raw[rng.below(raw.size())].first;  // truth among candidates
    } else if (roll < 9) {
      row.true_aux = static_cast<NodeId>(aux_nodes - 1 - rng.below(4));  // maybe outside
    }
    row.candidates = graphpriv::normalize_scores(std::move(raw));
    if (!row.candidates.empty()) est.rows.push_back(std::move(row));
  }
  std::sort(est.rows.begin(), est.rows.end(),
            [](const EstimateRow& a, const EstimateRow& b) { return a.anon_id < b.anon_id; });
  return est;
}

inline std::string temp_dir(const std::string& name) {
  const std::string dir = std::string("/tmp/graphpriv_tests/") + name;
  return dir;
}

}  // namespace testing_fixtures
