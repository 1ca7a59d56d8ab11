#include <graphpriv/deanonymizers.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <unordered_map>

#include <graphpriv/errors.hpp>
#include <graphpriv/rng.hpp>

namespace graphpriv {

namespace {

constexpr std::uint64_t pair_key(NodeId aux, NodeId anon) {
  return (static_cast<std::uint64_t>(aux) << 32) | anon;
}

// BFS distances with unreachable nodes at sentinel |V|.
std::vector<std::int32_t> bfs_distances(const Graph& g, NodeId source) {
  const auto n = static_cast<std::int32_t>(g.node_count());
  std::vector<std::int32_t> dist(g.node_count(), n);
  std::deque<NodeId> q{source};
  dist[source] = 0;
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop_front();
    for (NodeId w : g.neighbors(u)) {
      if (dist[w] == n) {
        dist[w] = dist[u] + 1;
        q.push_back(w);
      }
    }
  }
  return dist;
}

// Distance vectors to an ordered list of reference nodes, stored per node.
struct DistanceVectors {
  std::vector<std::vector<std::int32_t>> per_ref;  // [ref][node]

  void add_reference(const Graph& g, NodeId ref) { per_ref.push_back(bfs_distances(g, ref)); }

  std::size_t reference_count() const { return per_ref.size(); }
};

double distance_similarity(const DistanceVectors& a, NodeId i, const DistanceVectors& b,
                           NodeId j) {
  const std::size_t refs = a.reference_count();
  double l1 = 0.0;
  for (std::size_t s = 0; s < refs; ++s) {
    l1 += std::fabs(static_cast<double>(a.per_ref[s][i]) - static_cast<double>(b.per_ref[s][j]));
  }
  return 1.0 / (1.0 + l1 / static_cast<double>(refs));
}

EstimateRow make_row(NodeId anon_id, const NodeMapping& truth,
                     std::vector<std::pair<NodeId, double>> normalized) {
  EstimateRow row;
  row.anon_id = anon_id;
  row.true_aux = truth.inverse(anon_id);
  row.candidates = std::move(normalized);
  return row;
}

AdversaryEstimate assemble(const AuxiliaryKnowledge& k,
                           std::vector<EstimateRow> rows,
                           std::optional<std::size_t> chunk_size) {
  std::sort(rows.begin(), rows.end(),
            [](const EstimateRow& a, const EstimateRow& b) { return a.anon_id < b.anon_id; });
  AdversaryEstimate est;
  est.rows = std::move(rows);
  est.total_nodes = k.anon.node_count();
  est.aux_node_count = k.aux.node_count();
  est.chunk_size_used = chunk_size;
  return est;
}

}  // namespace

std::string deanonymizer_name(DeanonKind kind) {
  switch (kind) {
    case DeanonKind::ns: return "ns";
    case DeanonKind::kl: return "kl";
    case DeanonKind::yg: return "yg";
    case DeanonKind::dv: return "dv";
    case DeanonKind::jlsb: return "jlsb";
    case DeanonKind::ada: return "ada";
  }
  throw config_error("unknown deanonymizer kind");
}

DeanonKind deanonymizer_from_name(const std::string& name) {
  if (name == "ns") return DeanonKind::ns;
  if (name == "kl") return DeanonKind::kl;
  if (name == "yg") return DeanonKind::yg;
  if (name == "dv") return DeanonKind::dv;
  if (name == "jlsb") return DeanonKind::jlsb;
  if (name == "ada") return DeanonKind::ada;
  throw config_error("unknown deanonymizer: " + name);
}

DeanonConfig DeanonConfig::defaults_for(DeanonKind kind) {
  DeanonConfig cfg;
  cfg.kind = kind;
  switch (kind) {
    case DeanonKind::ns: cfg.theta = 0.5; break;
    case DeanonKind::kl: cfg.theta = 1.0; break;
    case DeanonKind::yg: cfg.theta = 2.0; break;
    case DeanonKind::dv:
    case DeanonKind::jlsb:
    case DeanonKind::ada: cfg.theta = 0.0; break;
  }
  return cfg;
}

void DeanonConfig::validate() const {
  if (chunk_size < 1) throw config_error("deanonymizer: chunk size must be >= 1");
  if (kind == DeanonKind::yg && theta < 1.0) throw config_error("yg: theta must be >= 1");
  auto near_one = [](double s) { return std::fabs(s - 1.0) < 1e-9; };
  if (kind == DeanonKind::jlsb &&
      !near_one(jlsb_w_degree + jlsb_w_neighbor + jlsb_w_refdist)) {
    throw config_error("jlsb: weights must sum to 1");
  }
  if (kind == DeanonKind::ada &&
      !near_one(ada_w_distance + ada_w_structural + ada_w_inheritance)) {
    throw config_error("ada: weights must sum to 1");
  }
}

void AuxiliaryKnowledge::validate() const {
  if (seeds.empty()) throw config_error("knowledge: need at least one seed mapping");
  for (const auto& [a, b] : seeds.pairs()) {
    if (a >= aux.node_count() || b >= anon.node_count()) {
      throw data_error("knowledge: seed endpoint out of range");
    }
    auto t = truth.forward(a);
    if (!t || *t != b) throw data_error("knowledge: seed mapping not contained in truth");
  }
}

AuxiliaryKnowledge make_knowledge(const Graph& original, const Graph& anon,
                                  const NodeMapping& anon_mapping, double aux_ratio,
                                  std::size_t seed_count, std::uint64_t seed) {
  if (seed_count < 1) throw config_error("make_knowledge: seed count must be >= 1");

  AuxiliaryKnowledge k;
  auto [aux, aux_to_orig] = sample_auxiliary(original, aux_ratio, Rng::mix(seed, 1));
  k.aux = std::move(aux);
  k.anon = anon;

  k.truth = NodeMapping(/*is_ground_truth=*/true);
  for (NodeId a = 0; a < k.aux.node_count(); ++a) {
    const NodeId orig = *aux_to_orig.forward(a);
    const auto target = anon_mapping.forward(orig);
    if (!target) throw data_error("make_knowledge: anonymization mapping is not total");
    k.truth.add(a, *target);
  }

  std::vector<NodeId> eligible;
  for (NodeId a = 0; a < k.aux.node_count(); ++a) {
    if (k.aux.degree(a) >= 1 && k.anon.degree(*k.truth.forward(a)) >= 1) {
      eligible.push_back(a);
    }
  }
  if (eligible.size() < seed_count) {
    throw config_error("make_knowledge: overlap (" + std::to_string(eligible.size()) +
                       " eligible nodes) smaller than seed count " + std::to_string(seed_count));
  }
  Rng rng(Rng::mix(seed, 2));
  k.seeds = NodeMapping(/*is_ground_truth=*/true);
  for (auto idx : rng.sample(static_cast<std::uint32_t>(eligible.size()),
                             static_cast<std::uint32_t>(seed_count))) {
    const NodeId a = eligible[idx];
    k.seeds.add(a, *k.truth.forward(a));
  }
  k.validate();
  return k;
}

AdversaryEstimate deanonymize(const AuxiliaryKnowledge& k, const DeanonConfig& cfg) {
  cfg.validate();
  k.validate();
  switch (cfg.kind) {
    case DeanonKind::ns: return deanon_ns(k, cfg);
    case DeanonKind::kl: return deanon_kl(k, cfg);
    case DeanonKind::yg: return deanon_yg(k, cfg);
    case DeanonKind::dv: return deanon_dv(k, cfg);
    case DeanonKind::jlsb: return deanon_jlsb(k, cfg);
    case DeanonKind::ada: return deanon_ada(k, cfg);
  }
  throw config_error("unknown deanonymizer kind");
}

// ---------------------------------------------------------------------------
// NS: iterative propagation with eccentricity and reverse-match checks.
// ---------------------------------------------------------------------------

namespace {

// Candidate scores for one anonymized node: for every mapped neighbor, the
// neighbors of its auxiliary counterpart are candidates; a candidate scores
// the number of mapped common neighbors over sqrt of its own degree.
std::vector<std::pair<NodeId, double>> ns_candidates(
    const Graph& from, const Graph& to, NodeId v,
    const std::unordered_map<NodeId, NodeId>& from_to_to) {
  std::unordered_map<NodeId, int> common;
  for (NodeId u : from.neighbors(v)) {
    auto it = from_to_to.find(u);
    if (it == from_to_to.end()) continue;
    for (NodeId c : to.neighbors(it->second)) ++common[c];
  }
  std::vector<std::pair<NodeId, double>> scores;
  scores.reserve(common.size());
  for (const auto& [c, cnt] : common) {
    scores.emplace_back(c, static_cast<double>(cnt) /
                               std::sqrt(static_cast<double>(to.degree(c))));
  }
  std::sort(scores.begin(), scores.end());
  return scores;
}

// Best candidate by score (lowest id on ties) plus the eccentricity
// (top margin over the runner-up in standard deviations of all scores).
struct TopPick {
  NodeId id = 0;
  double eccentricity = 0.0;
};

TopPick top_candidate(const std::vector<std::pair<NodeId, double>>& scores) {
  TopPick pick;
  double best = -1.0, second = -1.0;
  for (const auto& [id, s] : scores) {
    if (s > best) {
      second = best;
      best = s;
      pick.id = id;
    } else if (s > second) {
      second = s;
    }
  }
  if (scores.size() == 1) {
    pick.eccentricity = std::numeric_limits<double>::infinity();
    return pick;
  }
  double mean = 0.0;
  for (const auto& [id, s] : scores) {
    (void)id;
    mean += s;
  }
  mean /= static_cast<double>(scores.size());
  double var = 0.0;
  for (const auto& [id, s] : scores) {
    (void)id;
    var += (s - mean) * (s - mean);
  }
  const double sigma = std::sqrt(var / static_cast<double>(scores.size()));
  pick.eccentricity = sigma > 1e-12 ? (best - second) / sigma : 0.0;
  return pick;
}

}  // namespace

AdversaryEstimate deanon_ns(const AuxiliaryKnowledge& k, const DeanonConfig& cfg) {
  std::unordered_map<NodeId, NodeId> anon_to_aux, aux_to_anon;
  for (const auto& [a, b] : k.seeds.pairs()) {
    anon_to_aux.emplace(b, a);
    aux_to_anon.emplace(a, b);
  }

  std::unordered_map<NodeId, std::vector<std::pair<NodeId, double>>> last_row;
  Rng rng(cfg.seed);

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<NodeId> frontier;
    for (NodeId v = 0; v < k.anon.node_count(); ++v) {
      if (anon_to_aux.count(v)) continue;
      for (NodeId u : k.anon.neighbors(v)) {
        if (anon_to_aux.count(u)) {
          frontier.push_back(v);
          break;
        }
      }
    }
    rng.shuffle(frontier);

    for (NodeId v : frontier) {
      if (anon_to_aux.count(v)) continue;  // mapped earlier in this pass
      auto scores = ns_candidates(k.anon, k.aux, v, anon_to_aux);
      if (scores.empty()) continue;
      last_row[v] = normalize_scores(scores);

      const TopPick pick = top_candidate(scores);
      if (pick.eccentricity < cfg.theta) continue;
      if (aux_to_anon.count(pick.id)) continue;

      // Reverse matching from the auxiliary side must return v.
      auto reverse = ns_candidates(k.aux, k.anon, pick.id, aux_to_anon);
      if (reverse.empty()) continue;
      if (top_candidate(reverse).id != v) continue;

      anon_to_aux.emplace(v, pick.id);
      aux_to_anon.emplace(pick.id, v);
      changed = true;
    }
  }

  std::vector<EstimateRow> rows;
  rows.reserve(last_row.size());
  for (auto& [v, cands] : last_row) rows.push_back(make_row(v, k.truth, std::move(cands)));
  return assemble(k, std::move(rows), std::nullopt);
}

// ---------------------------------------------------------------------------
// KL: similarity witnesses inside degree-ordered chunks.
// ---------------------------------------------------------------------------

AdversaryEstimate deanon_kl(const AuxiliaryKnowledge& k, const DeanonConfig& cfg) {
  auto chunks = chunk_partition(k.anon, k.aux, cfg.chunk_size);

  std::vector<std::pair<NodeId, NodeId>> seed_list = k.seeds.pairs();  // (aux, anon)
  std::vector<bool> matched_aux(k.aux.node_count(), false);
  std::vector<bool> matched_anon(k.anon.node_count(), false);
  for (const auto& [a, b] : seed_list) {
    matched_aux[a] = true;
    matched_anon[b] = true;
  }

  std::vector<EstimateRow> rows;
  for (const auto& chunk : chunks) {
    if (chunk.anon_nodes.empty() || chunk.aux_nodes.empty()) continue;
    std::unordered_map<NodeId, std::size_t> aux_pos, anon_pos;
    for (std::size_t i = 0; i < chunk.aux_nodes.size(); ++i) aux_pos.emplace(chunk.aux_nodes[i], i);
    for (std::size_t j = 0; j < chunk.anon_nodes.size(); ++j) anon_pos.emplace(chunk.anon_nodes[j], j);

    std::vector<std::vector<int>> w(chunk.anon_nodes.size(),
                                    std::vector<int>(chunk.aux_nodes.size(), 0));
    auto add_witness = [&](NodeId seed_aux, NodeId seed_anon) {
      for (NodeId i : k.aux.neighbors(seed_aux)) {
        auto ii = aux_pos.find(i);
        if (ii == aux_pos.end()) continue;
        for (NodeId j : k.anon.neighbors(seed_anon)) {
          auto jj = anon_pos.find(j);
          if (jj != anon_pos.end()) ++w[jj->second][ii->second];
        }
      }
    };
    for (const auto& [a, b] : seed_list) add_witness(a, b);

    std::vector<std::size_t> accepted_here;
    while (true) {
      int best_w = -1;
      std::size_t best_j = 0, best_i = 0;
      for (std::size_t j = 0; j < chunk.anon_nodes.size(); ++j) {
        if (matched_anon[chunk.anon_nodes[j]]) continue;
        for (std::size_t i = 0; i < chunk.aux_nodes.size(); ++i) {
          if (matched_aux[chunk.aux_nodes[i]]) continue;
          const int cur = w[j][i];
          if (cur > best_w ||
              (cur == best_w &&
               std::pair(chunk.anon_nodes[j], chunk.aux_nodes[i]) <
                   std::pair(chunk.anon_nodes[best_j], chunk.aux_nodes[best_i]))) {
            best_w = cur;
            best_j = j;
            best_i = i;
          }
        }
      }
      if (best_w < 0 || static_cast<double>(best_w) < cfg.theta) break;
      const NodeId aux_node = chunk.aux_nodes[best_i];
      const NodeId anon_node = chunk.anon_nodes[best_j];
      matched_aux[aux_node] = true;
      matched_anon[anon_node] = true;
      seed_list.emplace_back(aux_node, anon_node);
      accepted_here.push_back(best_j);
      add_witness(aux_node, anon_node);
    }

    for (std::size_t j : accepted_here) {
      std::vector<std::pair<NodeId, double>> raw;
      for (std::size_t i = 0; i < chunk.aux_nodes.size(); ++i) {
        if (w[j][i] > 0) raw.emplace_back(chunk.aux_nodes[i], static_cast<double>(w[j][i]));
      }
      if (auto normalized = normalize_scores(std::move(raw)); !normalized.empty()) {
        rows.push_back(make_row(chunk.anon_nodes[j], k.truth, std::move(normalized)));
      }
    }
  }
  return assemble(k, std::move(rows), cfg.chunk_size);
}

// ---------------------------------------------------------------------------
// YG: percolation matching. Each used seed marks all neighbor pairs whose
// endpoints are still unmatched; after the full pass, pairs at or above the
// threshold become new seeds in deterministic order.
// ---------------------------------------------------------------------------

AdversaryEstimate deanon_yg(const AuxiliaryKnowledge& k, const DeanonConfig& cfg) {
  std::vector<bool> matched_aux(k.aux.node_count(), false);
  std::vector<bool> matched_anon(k.anon.node_count(), false);
  std::vector<std::pair<NodeId, NodeId>> queue = k.seeds.pairs();  // (aux, anon)
  for (const auto& [a, b] : queue) {
    matched_aux[a] = true;
    matched_anon[b] = true;
  }
  Rng rng(cfg.seed);
  rng.shuffle(queue);

  std::unordered_map<std::uint64_t, int> scores;
  std::vector<std::pair<NodeId, NodeId>> accepted;  // (aux, anon) beyond seeds

  std::size_t head = 0;
  while (head < queue.size()) {
    const auto [a, b] = queue[head++];
    std::vector<std::pair<NodeId, NodeId>> touched;  // (anon, aux) for ordering
    for (NodeId aa : k.aux.neighbors(a)) {
      if (matched_aux[aa]) continue;
      for (NodeId bb : k.anon.neighbors(b)) {
        if (matched_anon[bb]) continue;
        ++scores[pair_key(aa, bb)];
        touched.emplace_back(bb, aa);
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (const auto& [bb, aa] : touched) {
      if (matched_aux[aa] || matched_anon[bb]) continue;
      if (static_cast<double>(scores[pair_key(aa, bb)]) < cfg.theta) continue;
      matched_aux[aa] = true;
      matched_anon[bb] = true;
      queue.emplace_back(aa, bb);
      accepted.emplace_back(aa, bb);
    }
  }

  // Rows for percolated nodes: every positively scored pair is a candidate.
  std::unordered_map<NodeId, std::vector<std::pair<NodeId, double>>> by_anon;
  for (const auto& [key, score] : scores) {
    if (score <= 0) continue;
    const auto aux_id = static_cast<NodeId>(key >> 32);
    const auto anon_id = static_cast<NodeId>(key & 0xffffffffu);
    by_anon[anon_id].emplace_back(aux_id, static_cast<double>(score));
  }
  std::vector<EstimateRow> rows;
  rows.reserve(accepted.size());
  for (const auto& [aux_id, anon_id] : accepted) {
    (void)aux_id;
    auto normalized = normalize_scores(by_anon[anon_id]);
    if (!normalized.empty()) rows.push_back(make_row(anon_id, k.truth, std::move(normalized)));
  }
  return assemble(k, std::move(rows), std::nullopt);
}

// ---------------------------------------------------------------------------
// DV: distance vectors to the seeds, matched within chunks.
// ---------------------------------------------------------------------------

namespace {

struct SeedDistances {
  DistanceVectors aux;
  DistanceVectors anon;

  SeedDistances(const AuxiliaryKnowledge& k) {
    for (const auto& [a, b] : k.seeds.pairs()) {
      aux.add_reference(k.aux, a);
      anon.add_reference(k.anon, b);
    }
  }
};

}  // namespace

AdversaryEstimate deanon_dv(const AuxiliaryKnowledge& k, const DeanonConfig& cfg) {
  const SeedDistances sd(k);
  auto chunks = chunk_partition(k.anon, k.aux, cfg.chunk_size);

  std::vector<EstimateRow> rows;
  for (const auto& chunk : chunks) {
    if (chunk.aux_nodes.empty()) continue;
    for (NodeId j : chunk.anon_nodes) {
      std::vector<std::pair<NodeId, double>> raw;
      raw.reserve(chunk.aux_nodes.size());
      for (NodeId i : chunk.aux_nodes) {
        raw.emplace_back(i, distance_similarity(sd.aux, i, sd.anon, j));
      }
      if (auto normalized = normalize_scores(std::move(raw)); !normalized.empty()) {
        rows.push_back(make_row(j, k.truth, std::move(normalized)));
      }
    }
  }
  return assemble(k, std::move(rows), cfg.chunk_size);
}

// ---------------------------------------------------------------------------
// JLSB: weighted degree ratio, neighborhood profile cosine, and seed
// reference-distance similarity.
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<double>> neighbor_degree_profiles(const Graph& g) {
  std::vector<std::vector<double>> profiles(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto& p = profiles[v];
    p.reserve(g.degree(v));
    for (NodeId w : g.neighbors(v)) p.push_back(static_cast<double>(g.degree(w)));
    std::sort(p.begin(), p.end(), std::greater<>());
  }
  return profiles;
}

double profile_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  double dot = 0.0, na = 0.0, nb = 0.0;
  const std::size_t common = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < common; ++i) dot += a[i] * b[i];
  for (double x : a) na += x * x;
  for (double x : b) nb += x * x;
  return dot / std::sqrt(na * nb);
}

}  // namespace

AdversaryEstimate deanon_jlsb(const AuxiliaryKnowledge& k, const DeanonConfig& cfg) {
  const SeedDistances sd(k);
  const auto aux_profiles = neighbor_degree_profiles(k.aux);
  const auto anon_profiles = neighbor_degree_profiles(k.anon);
  auto chunks = chunk_partition(k.anon, k.aux, cfg.chunk_size);

  std::vector<EstimateRow> rows;
  for (const auto& chunk : chunks) {
    if (chunk.aux_nodes.empty()) continue;
    for (NodeId j : chunk.anon_nodes) {
      const double dj = static_cast<double>(k.anon.degree(j));
      std::vector<std::pair<NodeId, double>> raw;
      raw.reserve(chunk.aux_nodes.size());
      for (NodeId i : chunk.aux_nodes) {
        const double di = static_cast<double>(k.aux.degree(i));
        const double hi = std::max(di, dj);
        const double s_degree = hi > 0.0 ? std::min(di, dj) / hi : 1.0;
        const double s_neighbor = profile_cosine(aux_profiles[i], anon_profiles[j]);
        const double s_refdist = distance_similarity(sd.aux, i, sd.anon, j);
        raw.emplace_back(i, cfg.jlsb_w_degree * s_degree +
                                cfg.jlsb_w_neighbor * s_neighbor +
                                cfg.jlsb_w_refdist * s_refdist);
      }
      if (auto normalized = normalize_scores(std::move(raw)); !normalized.empty()) {
        rows.push_back(make_row(j, k.truth, std::move(normalized)));
      }
    }
  }
  return assemble(k, std::move(rows), cfg.chunk_size);
}

// ---------------------------------------------------------------------------
// ADA: adaptive chunked matching over centrality features, distances to the
// growing mapped set, and inheritance from the discovering pair.
// ---------------------------------------------------------------------------

namespace {

std::vector<double> closeness_centrality(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> closeness(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    auto dist = bfs_distances(g, v);
    double sum = 0.0;
    std::size_t reached = 0;
    for (NodeId u = 0; u < n; ++u) {
      if (u != v && dist[u] < static_cast<std::int32_t>(n)) {
        sum += static_cast<double>(dist[u]);
        ++reached;
      }
    }
    if (sum > 0.0) closeness[v] = static_cast<double>(reached) / sum;
  }
  return closeness;
}

// Brandes betweenness from sampled sources (unweighted graphs).
std::vector<double> sampled_betweenness(const Graph& g, std::size_t samples,
                                        std::uint64_t seed) {
  const std::size_t n = g.node_count();
  std::vector<double> bc(n, 0.0);
  if (n == 0) return bc;

  std::vector<NodeId> sources;
  if (samples >= n) {
    sources.resize(n);
    std::iota(sources.begin(), sources.end(), 0);
  } else {
    Rng rng(seed);
    auto picked = rng.sample(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(samples));
    sources.assign(picked.begin(), picked.end());
  }

  std::vector<std::int32_t> dist(n);
  std::vector<double> sigma(n), delta(n);
  std::vector<NodeId> order;
  order.reserve(n);
  for (NodeId s : sources) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    std::deque<NodeId> q{s};
    while (!q.empty()) {
      const NodeId u = q.front();
      q.pop_front();
      order.push_back(u);
      for (NodeId w : g.neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          q.push_back(w);
        }
        if (dist[w] == dist[u] + 1) sigma[w] += sigma[u];
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId w = *it;
      for (NodeId u : g.neighbors(w)) {
        if (dist[u] == dist[w] - 1 && sigma[w] > 0.0) {
          delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w]);
        }
      }
      if (w != s) bc[w] += delta[w];
    }
  }
  return bc;
}

// Min-max normalization of a feature over one chunk side.
std::vector<double> chunk_normalize(const std::vector<double>& feature,
                                    const std::vector<NodeId>& members) {
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (NodeId v : members) {
    if (first || feature[v] < lo) lo = feature[v];
    if (first || feature[v] > hi) hi = feature[v];
    first = false;
  }
  std::vector<double> out(members.size(), 0.0);
  if (hi > lo) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      out[i] = (feature[members[i]] - lo) / (hi - lo);
    }
  }
  return out;
}

struct MappedPair {
  NodeId aux = 0;
  NodeId anon = 0;
  double total = 0.0;  // acceptance score; 0 for the given seeds
  int depth = 0;       // 0 for seeds, parent depth + 1 otherwise
};

}  // namespace

AdversaryEstimate deanon_ada(const AuxiliaryKnowledge& k, const DeanonConfig& cfg) {
  const auto chunks = chunk_partition(k.anon, k.aux, cfg.chunk_size);

  // Structural features, min-max normalized per chunk and side.
  const std::vector<double> aux_deg = [&] {
    std::vector<double> d(k.aux.node_count());
    for (NodeId v = 0; v < k.aux.node_count(); ++v) d[v] = static_cast<double>(k.aux.degree(v));
    return d;
  }();
  const std::vector<double> anon_deg = [&] {
    std::vector<double> d(k.anon.node_count());
    for (NodeId v = 0; v < k.anon.node_count(); ++v) d[v] = static_cast<double>(k.anon.degree(v));
    return d;
  }();
  const auto aux_close = closeness_centrality(k.aux);
  const auto anon_close = closeness_centrality(k.anon);
  const auto aux_btw = sampled_betweenness(k.aux, cfg.betweenness_samples, Rng::mix(cfg.seed, 11));
  const auto anon_btw =
      sampled_betweenness(k.anon, cfg.betweenness_samples, Rng::mix(cfg.seed, 12));

  struct ChunkFeatures {
    std::vector<double> aux_f[3];
    std::vector<double> anon_f[3];
  };
  std::vector<ChunkFeatures> feats(chunks.size());
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    feats[c].aux_f[0] = chunk_normalize(aux_deg, chunks[c].aux_nodes);
    feats[c].aux_f[1] = chunk_normalize(aux_close, chunks[c].aux_nodes);
    feats[c].aux_f[2] = chunk_normalize(aux_btw, chunks[c].aux_nodes);
    feats[c].anon_f[0] = chunk_normalize(anon_deg, chunks[c].anon_nodes);
    feats[c].anon_f[1] = chunk_normalize(anon_close, chunks[c].anon_nodes);
    feats[c].anon_f[2] = chunk_normalize(anon_btw, chunks[c].anon_nodes);
  }

  DistanceVectors aux_dv, anon_dv;
  std::vector<MappedPair> mapped;
  std::vector<std::int32_t> aux_to_mapped(k.aux.node_count(), -1);
  std::vector<bool> matched_aux(k.aux.node_count(), false);
  std::vector<bool> matched_anon(k.anon.node_count(), false);
  auto accept = [&](NodeId a, NodeId b, double total, int depth) {
    aux_to_mapped[a] = static_cast<std::int32_t>(mapped.size());
    mapped.push_back({a, b, total, depth});
    matched_aux[a] = true;
    matched_anon[b] = true;
    aux_dv.add_reference(k.aux, a);
    anon_dv.add_reference(k.anon, b);
  };
  for (const auto& [a, b] : k.seeds.pairs()) accept(a, b, 0.0, 0);

  std::unordered_map<NodeId, std::vector<std::pair<NodeId, double>>> last_row;

  struct Candidate {
    double total;
    NodeId anon;
    NodeId aux;
    int depth;
  };

  bool first_iteration = true;
  for (int iteration = 0; iteration < 64; ++iteration) {
    std::vector<Candidate> acceptable;
    for (std::size_t c = 0; c < chunks.size(); ++c) {
      const auto& chunk = chunks[c];
      if (chunk.aux_nodes.empty()) continue;
      for (std::size_t jj = 0; jj < chunk.anon_nodes.size(); ++jj) {
        const NodeId j = chunk.anon_nodes[jj];
        // On the first pass every node is scored so that even pre-matched
        // (seed) nodes carry a candidate row; afterwards only unmatched
        // nodes are rescored.
        if (!first_iteration && matched_anon[j]) continue;
        std::vector<std::pair<NodeId, double>> raw;
        Candidate best{-1.0, 0, 0, 0};
        for (std::size_t ii = 0; ii < chunk.aux_nodes.size(); ++ii) {
          const NodeId i = chunk.aux_nodes[ii];
          if (!first_iteration && matched_aux[i]) continue;
          double diff = 0.0;
          for (int f = 0; f < 3; ++f) {
            diff += std::fabs(feats[c].aux_f[f][ii] - feats[c].anon_f[f][jj]);
          }
          const double s_structural = 1.0 - diff / 3.0;
          const double s_distance = distance_similarity(aux_dv, i, anon_dv, j);
          double s_inherit = 0.0;
          int parent_depth = -1;
          for (NodeId a2 : k.aux.neighbors(i)) {
            const std::int32_t m = aux_to_mapped[a2];
            if (m < 0) continue;
            const MappedPair& parent = mapped[static_cast<std::size_t>(m)];
            if (!k.anon.has_edge(j, parent.anon)) continue;
            const double factor =
                std::max(0.0, 1.0 - cfg.ada_epsilon * static_cast<double>(parent.depth + 1));
            const double contrib = factor * parent.total;  // 0 when the parent is a seed
            if (parent_depth < 0 || contrib > s_inherit) {
              s_inherit = std::max(s_inherit, contrib);
              parent_depth = parent.depth;
            }
          }
          const double total = cfg.ada_w_distance * s_distance +
                               cfg.ada_w_structural * s_structural +
                               cfg.ada_w_inheritance * s_inherit;
          raw.emplace_back(i, total);
          if (total > best.total) best = {total, j, i, parent_depth < 0 ? -1 : parent_depth};
        }
        if (auto normalized = normalize_scores(std::move(raw)); !normalized.empty()) {
          last_row[j] = std::move(normalized);
        }
        if (!matched_anon[j] && best.total > cfg.theta && !matched_aux[best.aux]) {
          acceptable.push_back(best);
        }
      }
    }
    first_iteration = false;
    if (acceptable.empty()) break;
    std::sort(acceptable.begin(), acceptable.end(), [](const Candidate& x, const Candidate& y) {
      if (x.total != y.total) return x.total > y.total;
      if (x.anon != y.anon) return x.anon < y.anon;
      return x.aux < y.aux;
    });
    bool any = false;
    for (const auto& cand : acceptable) {
      if (matched_anon[cand.anon] || matched_aux[cand.aux]) continue;
      accept(cand.aux, cand.anon, cand.total, cand.depth + 1);
      any = true;
    }
    if (!any) break;
  }

  std::vector<EstimateRow> rows;
  rows.reserve(last_row.size());
  for (auto& [j, cands] : last_row) rows.push_back(make_row(j, k.truth, std::move(cands)));
  return assemble(k, std::move(rows), cfg.chunk_size);
}

}  // namespace graphpriv
