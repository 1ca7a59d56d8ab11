#include <graphpriv/anonymizers.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include <graphpriv/errors.hpp>

namespace graphpriv {

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Mutable edge-set view used by the rewiring algorithms.
struct EdgeSet {
  std::vector<std::pair<NodeId, NodeId>> list;
  std::unordered_set<std::uint64_t> keys;

  explicit EdgeSet(const Graph& g) : list(g.edges()) {
    keys.reserve(list.size() * 2);
    for (const auto& [u, v] : list) keys.insert(edge_key(u, v));
  }

  bool contains(NodeId u, NodeId v) const { return keys.count(edge_key(u, v)) > 0; }

  void insert(NodeId u, NodeId v) {
    list.emplace_back(std::min(u, v), std::max(u, v));
    keys.insert(edge_key(u, v));
  }

  // Removes the edge at list position i (swap with the last entry).
  void erase_at(std::size_t i) {
    keys.erase(edge_key(list[i].first, list[i].second));
    list[i] = list.back();
    list.pop_back();
  }
};

}  // namespace

std::string anonymizer_name(AnonymizerKind kind) {
  switch (kind) {
    case AnonymizerKind::id_removal: return "idrem";
    case AnonymizerKind::edge_switch: return "switch";
    case AnonymizerKind::k_da: return "kda";
    case AnonymizerKind::dp: return "dp";
    case AnonymizerKind::random_walk: return "rw";
    case AnonymizerKind::t_means: return "tmeans";
  }
  throw config_error("unknown anonymizer kind");
}

AnonymizerKind anonymizer_from_name(const std::string& name) {
  if (name == "idrem") return AnonymizerKind::id_removal;
  if (name == "switch") return AnonymizerKind::edge_switch;
  if (name == "kda") return AnonymizerKind::k_da;
  if (name == "dp") return AnonymizerKind::dp;
  if (name == "rw") return AnonymizerKind::random_walk;
  if (name == "tmeans") return AnonymizerKind::t_means;
  throw config_error("unknown anonymizer: " + name);
}

void AnonymizerConfig::validate() const {
  switch (kind) {
    case AnonymizerKind::edge_switch:
      if (switch_fraction < 0.0) throw config_error("switch: fraction must be >= 0");
      break;
    case AnonymizerKind::k_da:
      if (k < 1) throw config_error("kda: k must be >= 1");
      break;
    case AnonymizerKind::dp:
      if (!(epsilon > 0.0)) throw config_error("dp: epsilon must be > 0");
      break;
    case AnonymizerKind::random_walk:
      if (walk_distance < 1) throw config_error("rw: distance must be >= 1");
      break;
    case AnonymizerKind::t_means:
      if (tmeans_max_size < 1) throw config_error("tmeans: max size must be >= 1");
      break;
    case AnonymizerKind::id_removal:
      break;
  }
}

std::pair<Graph, NodeMapping> anonymize(const Graph& g, const AnonymizerConfig& cfg,
                                        AnonymizeInfo* info) {
  cfg.validate();
  if (cfg.kind == AnonymizerKind::k_da && cfg.k > g.node_count()) {
    throw config_error("kda: k exceeds node count");
  }
  Rng rng(Rng::mix(cfg.seed, static_cast<std::uint64_t>(cfg.kind)));

  Graph structural = [&]() -> Graph {
    switch (cfg.kind) {
      case AnonymizerKind::id_removal:
        return g;
      case AnonymizerKind::edge_switch:
        return anonymize_switch(g, cfg.switch_fraction, rng,
                                info ? &info->switch_skipped : nullptr);
      case AnonymizerKind::k_da:
        return anonymize_kda(g, cfg.k, info ? &info->kda_residual : nullptr);
      case AnonymizerKind::dp:
        return anonymize_dp(g, cfg.epsilon, rng, info);
      case AnonymizerKind::random_walk:
        return anonymize_random_walk(g, cfg.walk_distance, rng);
      case AnonymizerKind::t_means:
        return anonymize_tmeans(g, cfg.tmeans_max_size,
                                info ? &info->tmeans_residual : nullptr);
    }
    throw config_error("unknown anonymizer kind");
  }();

  return permute_node_ids(structural, Rng::mix(cfg.seed, 0x9d2c5680ULL));
}

Graph anonymize_switch(const Graph& g, double r, Rng& rng, std::size_t* skipped) {
  if (r < 0.0) throw config_error("switch: fraction must be >= 0");
  EdgeSet es(g);
  const auto swaps = static_cast<std::size_t>(r * static_cast<double>(g.edge_count()));
  std::size_t skip_count = 0;
  constexpr int max_tries = 100;

  for (std::size_t step = 0; step < swaps; ++step) {
    if (es.list.size() < 2) {
      skip_count += swaps - step;
      break;
    }
    bool done = false;
    for (int attempt = 0; attempt < max_tries && !done; ++attempt) {
      const std::size_t i = static_cast<std::size_t>(rng.below(es.list.size()));
      std::size_t j = static_cast<std::size_t>(rng.below(es.list.size() - 1));
      if (j >= i) ++j;
      auto [a, b] = es.list[i];
      auto [c, d] = es.list[j];
      if (rng.below(2)) std::swap(a, b);
      if (rng.below(2)) std::swap(c, d);
      // Proposed replacement: (a,d) and (c,b).
      if (a == d || c == b) continue;
      if (es.contains(a, d) || es.contains(c, b)) continue;
      es.erase_at(std::max(i, j));
      es.erase_at(std::min(i, j));
      es.insert(a, d);
      es.insert(c, b);
      done = true;
    }
    if (!done) ++skip_count;
  }
  if (skipped) *skipped = skip_count;
  return Graph(g.node_count(), es.list, g.labels());
}

Graph anonymize_kda(const Graph& g, std::size_t k, std::size_t* residual) {
  const std::size_t n = g.node_count();
  if (k < 1) throw config_error("kda: k must be >= 1");
  if (k > n) throw config_error("kda: k exceeds node count");

  auto deg = g.degree_sequence();
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return deg[a] != deg[b] ? deg[a] > deg[b] : a < b;
  });

  // Greedy grouping over the descending degree sequence: extend the current
  // group while that is cheaper than opening a fresh group of k members.
  std::vector<std::size_t> target(n);
  std::size_t pos = 0;
  while (pos < n) {
    std::size_t end = std::min(pos + k, n);
    const std::size_t group_target = deg[order[pos]];
    while (end < n) {
      if (n - end < k) {
        ++end;  // tail too short for its own group, absorb it
        continue;
      }
      const double extend_cost =
          static_cast<double>(group_target - deg[order[end]]);
      double new_cost = 0.0;
      for (std::size_t m = end; m < end + k; ++m) {
        new_cost += static_cast<double>(deg[order[end]] - deg[order[m]]);
      }
      if (new_cost < extend_cost) break;
      ++end;
    }
    for (std::size_t i = pos; i < end; ++i) target[order[i]] = group_target;
    pos = end;
  }

  std::vector<std::size_t> current = deg;
  std::vector<std::int64_t> deficit(n);
  std::int64_t total_deficit = 0;
  for (NodeId v = 0; v < n; ++v) {
    deficit[v] = static_cast<std::int64_t>(target[v]) - static_cast<std::int64_t>(deg[v]);
    total_deficit += deficit[v];
  }
  if (total_deficit % 2 != 0) {
    // One relaxation pass: raise a single working target so deficits can pair
    // up; the deviation from the original target shows up in the residual.
    NodeId pick = 0;
    std::int64_t best = -1;
    for (NodeId v = 0; v < n; ++v) {
      if (deficit[v] > best) {
        best = deficit[v];
        pick = v;
      }
    }
    ++deficit[pick];
  }

  EdgeSet es(g);
  std::vector<bool> stuck(n, false);
  auto next_deficit_node = [&]() -> std::optional<NodeId> {
    std::optional<NodeId> best;
    for (NodeId v = 0; v < n; ++v) {
      if (stuck[v] || deficit[v] <= 0) continue;
      if (!best || deficit[v] > deficit[*best]) best = v;
    }
    return best;
  };

  while (auto u_opt = next_deficit_node()) {
    const NodeId u = *u_opt;
    // Preferred partner: highest remaining deficit (zero or negative allowed
    // as a fallback), lowest id on ties, not already adjacent.
    std::optional<NodeId> partner;
    for (NodeId v = 0; v < n; ++v) {
      if (v == u || es.contains(u, v)) continue;
      if (!partner || deficit[v] > deficit[*partner]) partner = v;
    }
    if (!partner) {
      stuck[u] = true;
      continue;
    }
    es.insert(u, *partner);
    ++current[u];
    ++current[*partner];
    --deficit[u];
    --deficit[*partner];
  }

  if (residual) {
    // Total deviation from the original k-anonymous target sequence: zero
    // exactly when every node landed on its target, which makes the output
    // degree sequence k-anonymous by construction.
    std::size_t res = 0;
    for (NodeId v = 0; v < n; ++v) {
      res += static_cast<std::size_t>(
          std::llabs(static_cast<std::int64_t>(target[v]) - static_cast<std::int64_t>(current[v])));
    }
    *residual = res;
  }
  return Graph(n, es.list, g.labels());
}

Dk2Series dk2_series(const Graph& g) {
  Dk2Series series;
  for (const auto& [u, v] : g.edges()) {
    const std::size_t du = g.degree(u), dv = g.degree(v);
    ++series[{std::min(du, dv), std::max(du, dv)}];
  }
  return series;
}

Graph anonymize_dp(const Graph& g, double epsilon, Rng& rng, AnonymizeInfo* info) {
  if (!(epsilon > 0.0)) throw config_error("dp: epsilon must be > 0");
  const std::size_t n = g.node_count();

  // Noise the series entry-wise. Adding or removing one edge changes the
  // degrees of its two endpoints, touching at most 4 dK-2 entries, hence the
  // global sensitivity of 4.
  const double scale = 4.0 / epsilon;
  Dk2Series noised;
  for (const auto& [key, count] : dk2_series(g)) {
    const double v = static_cast<double>(count) + rng.laplace(scale);
    const auto rounded = static_cast<std::int64_t>(std::llround(v));
    if (rounded > 0) noised[key] = rounded;
  }
  if (noised.empty()) {
    if (info) info->dp_empty_series = true;
    return Graph(n, {});
  }

  // Stub demand per degree class.
  std::map<std::size_t, std::int64_t> stubs;
  for (const auto& [key, count] : noised) {
    stubs[key.first] += count;
    stubs[key.second] += count;
  }

  // Node budget per class, fitted to the original node count: surplus is
  // trimmed from the smallest-degree classes, shortfall padded with isolated
  // nodes.
  std::vector<std::pair<std::size_t, std::int64_t>> classes;  // (degree, node count)
  std::int64_t total_nodes = 0;
  for (const auto& [degree, stub_count] : stubs) {
    const auto count = static_cast<std::int64_t>(
        (stub_count + static_cast<std::int64_t>(degree) - 1) / static_cast<std::int64_t>(degree));
    classes.emplace_back(degree, count);
    total_nodes += count;
  }
  std::sort(classes.begin(), classes.end());  // ascending degree
  std::int64_t surplus = total_nodes - static_cast<std::int64_t>(n);
  for (auto& [degree, count] : classes) {
    if (surplus <= 0) break;
    const std::int64_t cut = std::min(surplus, count);
    count -= cut;
    surplus -= cut;
  }

  // Assign classes to node ids (descending degree) and set stub capacities.
  std::vector<std::size_t> capacity(n, 0);
  std::map<std::size_t, std::vector<NodeId>, std::greater<>> members;
  {
    NodeId next = 0;
    for (auto it = classes.rbegin(); it != classes.rend(); ++it) {
      for (std::int64_t i = 0; i < it->second && next < n; ++i, ++next) {
        capacity[next] = it->first;
        members[it->first].push_back(next);
      }
    }
  }

  std::unordered_set<std::uint64_t> used;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_entry;
  std::size_t dropped = 0;

  auto pick_with_capacity = [&](const std::vector<NodeId>& pool) -> std::optional<NodeId> {
    // Uniform over pool members that still have free stubs; falls back to a
    // linear scan when random probing keeps hitting exhausted nodes.
    for (int t = 0; t < 16; ++t) {
      const NodeId v = pool[static_cast<std::size_t>(rng.below(pool.size()))];
      if (capacity[v] > 0) return v;
    }
    std::vector<NodeId> open;
    for (NodeId v : pool) {
      if (capacity[v] > 0) open.push_back(v);
    }
    if (open.empty()) return std::nullopt;
    return open[static_cast<std::size_t>(rng.below(open.size()))];
  };

  for (const auto& [key, count] : noised) {
    auto left_it = members.find(key.first);
    auto right_it = members.find(key.second);
    if (left_it == members.end() || right_it == members.end() ||
        left_it->second.empty() || right_it->second.empty()) {
      dropped += static_cast<std::size_t>(count);
      continue;
    }
    for (std::int64_t e = 0; e < count; ++e) {
      bool placed = false;
      for (int attempt = 0; attempt < 30 && !placed; ++attempt) {
        auto u = pick_with_capacity(left_it->second);
        auto v = pick_with_capacity(right_it->second);
        if (!u || !v) break;
        if (*u == *v || used.count(edge_key(*u, *v))) continue;
        used.insert(edge_key(*u, *v));
        by_entry[key].push_back(edges.size());
        edges.emplace_back(*u, *v);
        --capacity[*u];
        --capacity[*v];
        placed = true;
      }
      if (placed) continue;
      // Swap repair: split an existing edge (a,b) of the same class pair into
      // (u,b) and (a,v), which adds the missing edge without changing any
      // degree class.
      auto u = pick_with_capacity(left_it->second);
      auto v = pick_with_capacity(right_it->second);
      auto& entry_edges = by_entry[key];
      if (u && v && !entry_edges.empty()) {
        for (int attempt = 0; attempt < 30 && !placed; ++attempt) {
          const std::size_t idx =
              entry_edges[static_cast<std::size_t>(rng.below(entry_edges.size()))];
          const auto [a, b] = edges[idx];
          if (*u == b || a == *v) continue;
          if (used.count(edge_key(*u, b)) || used.count(edge_key(a, *v))) continue;
          used.erase(edge_key(a, b));
          used.insert(edge_key(*u, b));
          used.insert(edge_key(a, *v));
          edges[idx] = {*u, b};
          entry_edges.push_back(edges.size());
          edges.emplace_back(a, *v);
          --capacity[*u];
          --capacity[*v];
          placed = true;
        }
      }
      if (!placed) ++dropped;
    }
  }

  if (info) info->dp_dropped_edges = dropped;
  return Graph(n, edges, g.labels());
}

Graph anonymize_random_walk(const Graph& g, std::size_t t, Rng& rng) {
  if (t < 1) throw config_error("rw: distance must be >= 1");
  const std::size_t n = g.node_count();

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  std::unordered_set<std::uint64_t> added_keys;
  std::vector<std::pair<NodeId, NodeId>> added;
  for (NodeId v : order) {
    if (g.degree(v) == 0) continue;
    NodeId cur = v;
    for (std::size_t hop = 0; hop < t; ++hop) {
      auto nbrs = g.neighbors(cur);
      cur = nbrs[static_cast<std::size_t>(rng.below(nbrs.size()))];
    }
    if (cur == v || g.has_edge(v, cur) || added_keys.count(edge_key(v, cur))) continue;
    added_keys.insert(edge_key(v, cur));
    added.emplace_back(v, cur);
  }

  // Delete as many original edges as were added, chosen uniformly.
  auto original = g.edges();
  const std::size_t delete_count = std::min(added.size(), original.size());
  for (std::size_t i = 0; i < delete_count; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(original.size() - i));
    std::swap(original[i], original[j]);
  }
  std::vector<std::pair<NodeId, NodeId>> edges(original.begin() + delete_count,
                                               original.end());
  edges.insert(edges.end(), added.begin(), added.end());
  return Graph(n, edges, g.labels());
}

Graph anonymize_tmeans(const Graph& g, std::size_t max_size, std::size_t* residual) {
  if (max_size < 1) throw config_error("tmeans: max size must be >= 1");
  const std::size_t n = g.node_count();
  auto deg = g.degree_sequence();

  std::vector<NodeId> by_degree(n);
  std::iota(by_degree.begin(), by_degree.end(), 0);
  std::sort(by_degree.begin(), by_degree.end(), [&](NodeId a, NodeId b) {
    return deg[a] != deg[b] ? deg[a] < deg[b] : a < b;
  });

  // 1-D k-means over degree values, initialized with evenly spaced quantiles.
  const std::size_t k0 = std::max<std::size_t>(1, (n + max_size - 1) / max_size);
  std::vector<double> centers;
  for (std::size_t c = 0; c < k0 && n > 0; ++c) {
    const auto pick = static_cast<std::size_t>(
        (static_cast<double>(c) + 0.5) * static_cast<double>(n) / static_cast<double>(k0));
    centers.push_back(static_cast<double>(deg[by_degree[std::min(pick, n - 1)]]));
  }
  std::vector<std::size_t> assign(n, 0);
  for (int iter = 0; iter < 50; ++iter) {
    bool changed = false;
    for (NodeId v = 0; v < n; ++v) {
      std::size_t best = 0;
      double best_d = std::fabs(static_cast<double>(deg[v]) - centers[0]);
      for (std::size_t c = 1; c < centers.size(); ++c) {
        const double d = std::fabs(static_cast<double>(deg[v]) - centers[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (assign[v] != best) {
        assign[v] = best;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;
    std::vector<double> sum(centers.size(), 0.0);
    std::vector<std::size_t> cnt(centers.size(), 0);
    for (NodeId v = 0; v < n; ++v) {
      sum[assign[v]] += static_cast<double>(deg[v]);
      ++cnt[assign[v]];
    }
    for (std::size_t c = 0; c < centers.size(); ++c) {
      if (cnt[c] > 0) centers[c] = sum[c] / static_cast<double>(cnt[c]);
    }
  }

  std::vector<std::vector<NodeId>> clusters(centers.size());
  for (NodeId v = 0; v < n; ++v) clusters[assign[v]].push_back(v);
  clusters.erase(std::remove_if(clusters.begin(), clusters.end(),
                                [](const auto& c) { return c.empty(); }),
                 clusters.end());

  // Split oversized clusters at the degree median until the bound holds.
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    while (clusters[i].size() > max_size) {
      auto& c = clusters[i];
      std::sort(c.begin(), c.end(), [&](NodeId a, NodeId b) {
        return deg[a] != deg[b] ? deg[a] < deg[b] : a < b;
      });
      const std::size_t half = c.size() / 2;
      clusters.emplace_back(c.begin() + half, c.end());
      c.resize(half);
    }
  }

  // Target degree = degree of the member closest to the cluster mean.
  std::vector<std::size_t> target(n, 0);
  std::vector<std::size_t> cluster_of(n, 0);
  for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
    const auto& c = clusters[ci];
    double mean_deg = 0.0;
    for (NodeId v : c) mean_deg += static_cast<double>(deg[v]);
    mean_deg /= static_cast<double>(c.size());
    NodeId center = c.front();
    for (NodeId v : c) {
      const double dv = std::fabs(static_cast<double>(deg[v]) - mean_deg);
      const double dc = std::fabs(static_cast<double>(deg[center]) - mean_deg);
      if (dv < dc || (dv == dc && v < center)) center = v;
    }
    for (NodeId v : c) {
      target[v] = deg[center];
      cluster_of[v] = ci;
    }
  }

  EdgeSet es(g);
  std::vector<std::int64_t> diff(n);  // current degree - target
  for (NodeId v = 0; v < n; ++v) {
    diff[v] = static_cast<std::int64_t>(deg[v]) - static_cast<std::int64_t>(target[v]);
  }
  std::vector<std::vector<NodeId>> adj(n);
  for (const auto& [u, v] : es.list) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }

  // Deletions first: shed surplus edges, preferring neighbors that also have
  // surplus so both ends move toward their targets.
  auto max_surplus_node = [&]() -> std::optional<NodeId> {
    std::optional<NodeId> best;
    for (NodeId v = 0; v < n; ++v) {
      if (diff[v] <= 0 || adj[v].empty()) continue;
      if (!best || diff[v] > diff[*best]) best = v;
    }
    return best;
  };
  while (auto u_opt = max_surplus_node()) {
    const NodeId u = *u_opt;
    NodeId pick = adj[u].front();
    for (NodeId w : adj[u]) {
      if (diff[w] > diff[pick] || (diff[w] == diff[pick] && w < pick)) pick = w;
    }
    auto remove_from = [&](std::vector<NodeId>& lst, NodeId x) {
      lst.erase(std::find(lst.begin(), lst.end(), x));
    };
    remove_from(adj[u], pick);
    remove_from(adj[pick], u);
    for (std::size_t i = 0; i < es.list.size(); ++i) {
      if (edge_key(es.list[i].first, es.list[i].second) == edge_key(u, pick)) {
        es.erase_at(i);
        break;
      }
    }
    --diff[u];
    --diff[pick];
  }

  // Additions: pair deficit nodes, preferring partners from other clusters.
  std::vector<bool> stuck(n, false);
  auto max_deficit_node = [&]() -> std::optional<NodeId> {
    std::optional<NodeId> best;
    for (NodeId v = 0; v < n; ++v) {
      if (stuck[v] || diff[v] >= 0) continue;
      if (!best || diff[v] < diff[*best]) best = v;
    }
    return best;
  };
  while (auto u_opt = max_deficit_node()) {
    const NodeId u = *u_opt;
    std::optional<NodeId> partner;
    bool partner_cross = false;
    for (NodeId v = 0; v < n; ++v) {
      if (v == u || diff[v] >= 0 || es.contains(u, v)) continue;
      const bool cross = cluster_of[v] != cluster_of[u];
      if (!partner || (cross && !partner_cross) ||
          (cross == partner_cross && diff[v] < diff[*partner])) {
        partner = v;
        partner_cross = cross;
      }
    }
    if (!partner) {
      stuck[u] = true;
      continue;
    }
    es.insert(u, *partner);
    ++diff[u];
    ++diff[*partner];
  }

  if (residual) {
    std::size_t res = 0;
    for (NodeId v = 0; v < n; ++v) res += static_cast<std::size_t>(std::llabs(diff[v]));
    *residual = res;
  }
  return Graph(n, es.list, g.labels());
}

}  // namespace graphpriv
