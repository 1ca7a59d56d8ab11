#include <graphpriv/estimate.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include <graphpriv/errors.hpp>

namespace graphpriv {

using json = nlohmann::json;

NodeId EstimateRow::chosen() const {
  NodeId best = candidates.front().first;
  double best_p = candidates.front().second;
  for (const auto& [id, p] : candidates) {
    if (p > best_p) {
      best = id;
      best_p = p;
    }
  }
  return best;
}

double EstimateRow::truth_probability() const {
  if (!true_aux) return 0.0;
  for (const auto& [id, p] : candidates) {
    if (id == *true_aux) return p;
  }
  return 0.0;
}

void AdversaryEstimate::validate() const {
  if (attempted_count() > total_nodes) {
    throw data_error("estimate: attempted count exceeds total node count");
  }
  NodeId prev = 0;
  bool first = true;
  for (const auto& row : rows) {
    if (!first && row.anon_id <= prev) throw data_error("estimate: rows not sorted by anon id");
    prev = row.anon_id;
    first = false;
    if (row.candidates.empty()) throw data_error("estimate: attempted row without candidates");
    double sum = 0.0;
    for (const auto& [id, p] : row.candidates) {
      if (p < 0.0 || !std::isfinite(p)) throw data_error("estimate: invalid probability");
      sum += p;
      (void)id;
    }
    if (std::fabs(sum - 1.0) > 1e-9) throw data_error("estimate: probabilities do not sum to 1");
  }
}

void AdversaryEstimate::dump_jsonl(std::ostream& out) const {
  json meta;
  meta["total_nodes"] = total_nodes;
  meta["aux_nodes"] = aux_node_count;
  if (chunk_size_used) {
    meta["chunk_size"] = *chunk_size_used;
  } else {
    meta["chunk_size"] = nullptr;
  }
  out << meta.dump() << '\n';
  for (const auto& row : rows) {
    json rec;
    rec["anon_id"] = row.anon_id;
    if (row.true_aux) {
      rec["true_aux_id"] = *row.true_aux;
    } else {
      rec["true_aux_id"] = nullptr;
    }
    json cands = json::array();
    for (const auto& [id, p] : row.candidates) cands.push_back(json::array({id, p}));
    rec["candidates"] = std::move(cands);
    out << rec.dump() << '\n';
  }
}

AdversaryEstimate AdversaryEstimate::load_jsonl(std::istream& in) {
  AdversaryEstimate est;
  std::string line;
  bool have_meta = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded()) throw data_error("estimate dump: malformed JSON line");
    if (!have_meta && rec.contains("total_nodes")) {
      est.total_nodes = rec.at("total_nodes").get<std::size_t>();
      est.aux_node_count = rec.value("aux_nodes", std::size_t{0});
      if (rec.contains("chunk_size") && !rec.at("chunk_size").is_null()) {
        est.chunk_size_used = rec.at("chunk_size").get<std::size_t>();
      }
      have_meta = true;
      continue;
    }
    EstimateRow row;
    row.anon_id = rec.at("anon_id").get<NodeId>();
    if (rec.contains("true_aux_id") && !rec.at("true_aux_id").is_null()) {
      row.true_aux = rec.at("true_aux_id").get<NodeId>();
    }
    for (const auto& c : rec.at("candidates")) {
      row.candidates.emplace_back(c.at(0).get<NodeId>(), c.at(1).get<double>());
    }
    std::sort(row.candidates.begin(), row.candidates.end());
    est.rows.push_back(std::move(row));
  }
  std::sort(est.rows.begin(), est.rows.end(),
            [](const EstimateRow& a, const EstimateRow& b) { return a.anon_id < b.anon_id; });
  if (!have_meta) {
    // No meta record: fall back to the largest ids seen.
    std::size_t max_anon = 0, max_aux = 0;
    for (const auto& row : est.rows) {
      max_anon = std::max<std::size_t>(max_anon, row.anon_id + 1);
      for (const auto& [id, p] : row.candidates) {
        max_aux = std::max<std::size_t>(max_aux, id + 1);
        (void)p;
      }
    }
    est.total_nodes = max_anon;
    est.aux_node_count = max_aux;
  }
  return est;
}

std::vector<std::pair<NodeId, double>> normalize_scores(
    std::vector<std::pair<NodeId, double>> raw) {
  double sum = 0.0;
  for (const auto& [id, score] : raw) {
    (void)id;
    if (score < 0.0 || !std::isfinite(score)) {
      throw data_error("normalize_scores: scores must be finite and non-negative");
    }
    sum += score;
  }
  if (sum <= 0.0) return {};  // all-zero scores: node is unattempted
  for (auto& [id, score] : raw) {
    (void)id;
    score /= sum;
  }
  std::sort(raw.begin(), raw.end());
  return raw;
}

std::vector<ChunkPair> chunk_partition(const Graph& anon, const Graph& aux,
                                       std::size_t chunk_size) {
  if (chunk_size < 1) throw config_error("chunk_partition: chunk size must be >= 1");

  auto ordered = [](const Graph& g) {
    std::vector<NodeId> nodes(g.node_count());
    std::iota(nodes.begin(), nodes.end(), 0);
    std::sort(nodes.begin(), nodes.end(), [&](NodeId a, NodeId b) {
      return g.degree(a) != g.degree(b) ? g.degree(a) > g.degree(b) : a < b;
    });
    return nodes;
  };
  const auto anon_order = ordered(anon);
  const auto aux_order = ordered(aux);

  const std::size_t longest = std::max(anon_order.size(), aux_order.size());
  const std::size_t count = (longest + chunk_size - 1) / chunk_size;
  std::vector<ChunkPair> chunks(count);
  for (std::size_t c = 0; c < count; ++c) {
    const std::size_t lo = c * chunk_size;
    auto slice = [&](const std::vector<NodeId>& order) {
      std::vector<NodeId> out;
      for (std::size_t i = lo; i < std::min(lo + chunk_size, order.size()); ++i) {
        out.push_back(order[i]);
      }
      return out;
    };
    chunks[c].anon_nodes = slice(anon_order);
    chunks[c].aux_nodes = slice(aux_order);
  }
  return chunks;
}

}  // namespace graphpriv
