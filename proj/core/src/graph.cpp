#include <graphpriv/graph.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

#include <graphpriv/errors.hpp>
#include <graphpriv/rng.hpp>

namespace graphpriv {

Graph::Graph(std::size_t node_count, const std::vector<std::pair<NodeId, NodeId>>& edges,
             std::vector<std::string> labels) {
  adj_.resize(node_count);
  for (const auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw data_error("edge endpoint " + std::to_string(std::max(u, v)) +
                       " out of range for " + std::to_string(node_count) + " nodes");
    }
    if (u == v) continue;  // self-loops silently dropped
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nbrs : adj_) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    edge_count_ += nbrs.size();
  }
  edge_count_ /= 2;

  if (labels.empty()) {
    labels_.reserve(node_count);
    for (std::size_t i = 0; i < node_count; ++i) labels_.push_back(std::to_string(i));
  } else {
    if (labels.size() != node_count) throw data_error("label count does not match node count");
    labels_ = std::move(labels);
  }
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto& nbrs = adj_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adj_.size(); ++u) {
    for (NodeId v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::size_t> Graph::degree_sequence() const {
  std::vector<std::size_t> d(adj_.size());
  for (NodeId v = 0; v < adj_.size(); ++v) d[v] = adj_[v].size();
  return d;
}

void NodeMapping::add(NodeId from, NodeId to) {
  if (fwd_.count(from) || inv_.count(to)) {
    throw data_error("mapping is not injective: pair (" + std::to_string(from) + ", " +
                     std::to_string(to) + ")");
  }
  fwd_.emplace(from, to);
  inv_.emplace(to, from);
}

std::optional<NodeId> NodeMapping::forward(NodeId from) const {
  auto it = fwd_.find(from);
  if (it == fwd_.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeId> NodeMapping::inverse(NodeId to) const {
  auto it = inv_.find(to);
  if (it == inv_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<NodeId, NodeId>> NodeMapping::pairs() const {
  std::vector<std::pair<NodeId, NodeId>> out(fwd_.begin(), fwd_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string GraphStats::csv_header() {
  return "dataset,nodes,edges,diameter,avg_degree,avg_shortest_path,"
         "clustering_coefficient,gini_coefficient,claws";
}

std::string GraphStats::csv_row(const std::string& dataset) const {
  std::ostringstream os;
  os << dataset << ',' << nodes << ',' << edges << ',' << diameter << ','
     << avg_degree << ',' << avg_shortest_path << ',' << clustering_coefficient << ','
     << degree_gini << ',' << claws;
  return os.str();
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open edge list: " + path);

  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<std::pair<NodeId, NodeId>> edges;

  auto intern = [&](const std::string& token) -> NodeId {
    auto it = ids.find(token);
    if (it != ids.end()) return it->second;
    const NodeId id = static_cast<NodeId>(labels.size());
    ids.emplace(token, id);
    labels.push_back(token);
    return id;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '%' || line[first] == '#') continue;

    std::istringstream ls(line);
    std::string a, b;
    ls >> a;
    if (!(ls >> b)) {
      throw data_error(path + ":" + std::to_string(line_no) + ": expected at least two tokens");
    }
    const NodeId u = intern(a);
    const NodeId v = intern(b);
    if (u != v) edges.emplace_back(u, v);  // self-loops dropped, ids still interned
  }
  const std::size_t node_count = labels.size();
  return Graph(node_count, edges, std::move(labels));
}

namespace {

std::vector<NodeId> bfs_component(const Graph& g, NodeId start, std::vector<int>& mark,
                                  int tag) {
  std::vector<NodeId> comp;
  std::queue<NodeId> q;
  q.push(start);
  mark[start] = tag;
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop();
    comp.push_back(u);
    for (NodeId w : g.neighbors(u)) {
      if (mark[w] < 0) {
        mark[w] = tag;
        q.push(w);
      }
    }
  }
  return comp;
}

Graph induced_subgraph(const Graph& g, const std::vector<NodeId>& nodes_sorted,
                       NodeMapping* correspondence) {
  std::unordered_map<NodeId, NodeId> to_new;
  to_new.reserve(nodes_sorted.size());
  std::vector<std::string> labels;
  labels.reserve(nodes_sorted.size());
  for (NodeId old : nodes_sorted) {
    to_new.emplace(old, static_cast<NodeId>(labels.size()));
    labels.push_back(g.label(old));
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId old : nodes_sorted) {
    const NodeId nu = to_new[old];
    for (NodeId w : g.neighbors(old)) {
      auto it = to_new.find(w);
      if (it != to_new.end() && nu < it->second) edges.emplace_back(nu, it->second);
    }
  }
  if (correspondence) {
    for (NodeId old : nodes_sorted) correspondence->add(to_new[old], old);
  }
  return Graph(nodes_sorted.size(), edges, std::move(labels));
}

// Largest component's node set in ascending id order; size ties go to the
// component with the lexicographically smallest label.
std::vector<NodeId> largest_component_nodes(const Graph& g) {
  std::vector<int> mark(g.node_count(), -1);
  std::vector<NodeId> best;
  std::string best_min_label;
  int tag = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (mark[v] >= 0) continue;
    auto comp = bfs_component(g, v, mark, tag++);
    std::string min_label = g.label(comp.front());
    for (NodeId u : comp) min_label = std::min(min_label, g.label(u));
    if (comp.size() > best.size() ||
        (comp.size() == best.size() && min_label < best_min_label)) {
      best = std::move(comp);
      best_min_label = std::move(min_label);
    }
  }
  std::sort(best.begin(), best.end());
  return best;
}

}  // namespace

Graph largest_connected_component(const Graph& g) {
  if (g.node_count() == 0) throw data_error("largest_connected_component: empty graph");
  return induced_subgraph(g, largest_component_nodes(g), nullptr);
}

std::pair<Graph, NodeMapping> permute_node_ids(const Graph& g, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  rng.shuffle(perm);

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(g.edge_count());
  for (const auto& [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);

  NodeMapping mapping(/*is_ground_truth=*/true);
  for (NodeId v = 0; v < n; ++v) mapping.add(v, perm[v]);
  return {Graph(n, edges), std::move(mapping)};
}

std::pair<Graph, NodeMapping> sample_auxiliary(const Graph& g, double ratio,
                                               std::uint64_t seed) {
  if (!(ratio > 0.0) || ratio > 1.0) throw config_error("sample_auxiliary: ratio must be in (0,1]");
  const std::size_t n = g.node_count();
  const auto k = static_cast<std::uint32_t>(
      std::min<double>(static_cast<double>(n), std::ceil(ratio * static_cast<double>(n))));

  Rng rng(seed);
  auto picked32 = rng.sample(static_cast<std::uint32_t>(n), k);
  std::vector<NodeId> picked(picked32.begin(), picked32.end());

  NodeMapping to_orig(/*is_ground_truth=*/true);
  Graph induced = induced_subgraph(g, picked, &to_orig);
  if (induced.node_count() == 0) return {induced, NodeMapping(true)};

  // Keep the largest connected component and compose the correspondences.
  NodeMapping lcc_map(true);
  Graph aux = induced_subgraph(induced, largest_component_nodes(induced), &lcc_map);

  NodeMapping mapping(/*is_ground_truth=*/true);
  for (NodeId v = 0; v < aux.node_count(); ++v) {
    mapping.add(v, *to_orig.forward(*lcc_map.forward(v)));
  }
  return {std::move(aux), std::move(mapping)};
}

GraphStats compute_graph_stats(const Graph& g, std::size_t path_sample,
                               std::uint64_t seed) {
  const std::size_t n = g.node_count();
  if (n == 0) throw data_error("compute_graph_stats: empty graph");
  if (path_sample < 1) throw config_error("compute_graph_stats: path_sample must be >= 1");

  GraphStats s;
  s.nodes = n;
  s.edges = g.edge_count();
  s.avg_degree = n > 0 ? 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(n) : 0.0;

  // Degree-based statistics.
  auto degs = g.degree_sequence();
  double wedges = 0.0;
  for (std::size_t d : degs) {
    const double dd = static_cast<double>(d);
    wedges += dd * (dd - 1.0) / 2.0;
    if (d >= 3) s.claws += static_cast<std::uint64_t>(d) * (d - 1) * (d - 2) / 6;
  }

  // Global transitivity: 3 * triangles / wedges. Each triangle contributes one
  // common neighbor per edge, so summing |N(u) & N(v)| over edges gives 3T.
  double closed = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (v <= u) continue;
      auto a = g.neighbors(u);
      auto b = g.neighbors(v);
      std::size_t i = 0, j = 0;
      while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
          ++i;
        } else if (a[i] > b[j]) {
          ++j;
        } else {
          ++closed;
          ++i;
          ++j;
        }
      }
    }
  }
  s.clustering_coefficient = wedges > 0.0 ? closed / wedges : 0.0;

  // Gini over the degree sequence.
  std::sort(degs.begin(), degs.end());
  double total_deg = 0.0, weighted = 0.0;
  for (std::size_t i = 0; i < degs.size(); ++i) {
    total_deg += static_cast<double>(degs[i]);
    weighted += (2.0 * static_cast<double>(i + 1) - static_cast<double>(n) - 1.0) *
                static_cast<double>(degs[i]);
  }
  s.degree_gini = total_deg > 0.0 ? weighted / (static_cast<double>(n) * total_deg) : 0.0;

  // Distance statistics from BFS over sampled sources.
  std::vector<NodeId> sources;
  if (path_sample >= n) {
    sources.resize(n);
    std::iota(sources.begin(), sources.end(), 0);
  } else {
    Rng rng(seed);
    auto picked = rng.sample(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(path_sample));
    sources.assign(picked.begin(), picked.end());
  }

  std::vector<std::uint32_t> dist(n);
  std::uint64_t pair_count = 0;
  double dist_sum = 0.0;
  std::size_t diameter = 0;
  std::vector<NodeId> frontier, next;
  for (NodeId src : sources) {
    std::fill(dist.begin(), dist.end(), UINT32_MAX);
    dist[src] = 0;
    frontier.assign(1, src);
    std::uint32_t level = 0;
    std::size_t reached = 1;
    while (!frontier.empty()) {
      next.clear();
      ++level;
      for (NodeId u : frontier) {
        for (NodeId w : g.neighbors(u)) {
          if (dist[w] == UINT32_MAX) {
            dist[w] = level;
            next.push_back(w);
            dist_sum += level;
            ++pair_count;
            ++reached;
          }
        }
      }
      if (!next.empty()) diameter = std::max<std::size_t>(diameter, level);
      frontier.swap(next);
    }
    if (reached != n) {
      throw data_error("compute_graph_stats: graph is disconnected, reduce to the "
                       "largest connected component first");
    }
  }
  s.diameter = diameter;
  s.avg_shortest_path = pair_count > 0 ? dist_sum / static_cast<double>(pair_count) : 0.0;
  return s;
}

void validate_graph(const Graph& g) {
  const std::size_t n = g.node_count();
  if (g.labels().size() != n) throw data_error("validate_graph: label count mismatch");
  std::size_t half_edges = 0;
  for (NodeId u = 0; u < n; ++u) {
    auto nbrs = g.neighbors(u);
    half_edges += nbrs.size();
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const NodeId v = nbrs[i];
      if (v >= n) throw data_error("validate_graph: neighbor id out of range");
      if (v == u) throw data_error("validate_graph: self-loop at node " + std::to_string(u));
      if (i > 0 && nbrs[i - 1] >= v) throw data_error("validate_graph: adjacency not sorted/unique");
      if (!g.has_edge(v, u)) throw data_error("validate_graph: asymmetric edge");
    }
  }
  if (half_edges != 2 * g.edge_count()) throw data_error("validate_graph: edge count mismatch");
}

void write_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write edge list: " + path);
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
  if (g.node_count() > 0 && g.degree(g.node_count() - 1) == 0) {
    // Isolated trailing nodes would otherwise vanish on re-load; emit a
    // comment with the node count so round-trips keep the size visible.
    out << "% nodes " << g.node_count() << '\n';
  }
}

}  // namespace graphpriv
