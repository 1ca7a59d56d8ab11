#include <graphpriv/experiment.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include <graphpriv/errors.hpp>

namespace graphpriv {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

ScenarioId parse_scenario(const std::string& id) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : id) {
    if (c == '|') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 4) throw data_error("malformed scenario id: " + id);
  return {parts[0], parts[1], parts[2], parts[3]};
}

// scenario -> metric -> level -> replication samples
using GroupedRecords = std::map<std::string, std::map<std::string, std::map<int, std::vector<double>>>>;

GroupedRecords group_records(const ResultStore& store) {
  GroupedRecords grouped;
  for (const auto& r : store.records()) {
    grouped[r.scenario_id][r.metric][r.level].push_back(r.value);
  }
  return grouped;
}

// scenario -> metric -> pooled per-node values (for evenness), when dumped.
std::map<std::string, std::map<std::string, std::vector<double>>> group_per_node(
    const ResultStore& store) {
  std::map<std::string, std::map<std::string, std::vector<double>>> grouped;
  for (const auto& r : store.per_node_records()) {
    grouped[r.scenario_id][r.metric].push_back(r.value);
  }
  return grouped;
}

}  // namespace

std::map<std::string, AlternativeMatrix> scenario_matrices(const ResultStore& store) {
  const auto grouped = group_records(store);
  const auto& registry = metric_registry();

  std::map<std::string, AlternativeMatrix> matrices;
  for (const auto& [scenario, by_metric] : grouped) {
    auto levels_it = store.level_values().find(scenario);
    if (levels_it == store.level_values().end()) {
      throw data_error("store has records but no level values for " + scenario);
    }
    const std::size_t level_count = levels_it->second.size();

    AlternativeMatrix m;
    for (const auto& d : registry) {
      m.metrics.emplace_back(d.name);
      m.directions.push_back(d.direction);
    }
    m.x.assign(level_count, std::vector<double>(registry.size(), 0.0));
    for (std::size_t j = 0; j < registry.size(); ++j) {
      auto metric_it = by_metric.find(std::string(registry[j].name));
      if (metric_it == by_metric.end()) continue;
      for (const auto& [level, samples] : metric_it->second) {
        if (level < 0 || static_cast<std::size_t>(level) >= level_count || samples.empty()) continue;
        double sum = 0.0;
        for (double v : samples) sum += v;
        m.x[static_cast<std::size_t>(level)][j] = sum / static_cast<double>(samples.size());
      }
    }
    matrices.emplace(scenario, std::move(m));
  }
  return matrices;
}

std::vector<ScenarioStrength> compute_strength_scores(const ResultStore& store) {
  const auto grouped = group_records(store);
  const auto per_node = group_per_node(store);

  // Global value ranges per metric, computed over pooled scenario values.
  std::map<std::string, std::pair<double, double>> global_range;
  std::map<std::string, std::map<std::string, std::pair<double, double>>> scenario_range;
  auto fold_range = [](std::pair<double, double>& range, double v, bool& first) {
    if (first) {
      range = {v, v};
      first = false;
    } else {
      range.first = std::min(range.first, v);
      range.second = std::max(range.second, v);
    }
  };

  std::map<std::string, std::map<std::string, std::vector<double>>> pooled;
  for (const auto& [scenario, by_metric] : grouped) {
    for (const auto& [metric, by_level] : by_metric) {
      auto& pool = pooled[scenario][metric];
      if (auto s_it = per_node.find(scenario); s_it != per_node.end()) {
        if (auto m_it = s_it->second.find(metric); m_it != s_it->second.end()) {
          pool = m_it->second;  // per-node values pooled when available
        }
      }
      if (pool.empty()) {
        for (const auto& [level, samples] : by_level) {
          (void)level;
          pool.insert(pool.end(), samples.begin(), samples.end());
        }
      }
    }
  }
  for (const auto& [scenario, by_metric] : pooled) {
    for (const auto& [metric, values] : by_metric) {
      bool first_s = true;
      bool first_g = global_range.count(metric) == 0;
      auto& srange = scenario_range[metric][scenario];
      auto& grange = global_range[metric];
      for (double v : values) {
        fold_range(srange, v, first_s);
        fold_range(grange, v, first_g);
      }
    }
  }

  std::vector<ScenarioStrength> out;
  for (const auto& [scenario, by_metric] : grouped) {
    const ScenarioId sid = parse_scenario(scenario);
    for (const auto& [metric, by_level] : by_metric) {
      ScenarioSeries series;
      series.id = sid;
      series.metric = &metric_by_name(metric);
      for (const auto& [level, samples] : by_level) {
        (void)level;
        series.levels.push_back(samples);
      }

      ScenarioStrength s;
      s.id = sid;
      s.metric = metric;
      s.scores.monotonicity = monotonicity_score(series);
      const auto& pool = pooled.at(scenario).at(metric);
      s.scores.evenness = pool.size() >= 2 ? evenness_score(pool) : 0.0;
      const auto ranges = shared_range_scores(
          std::vector<std::pair<double, double>>{scenario_range[metric][scenario]},
          global_range[metric]);
      s.scores.shared_range = ranges.front();
      out.push_back(std::move(s));
    }
  }
  return out;
}

void build_reports(const ResultStore& store, const std::string& out_dir) {
  if (store.records().empty()) throw data_error("build_reports: store is empty");
  fs::create_directories(out_dir);

  const auto strengths = compute_strength_scores(store);

  // (a) per-scenario strength scores
  {
    std::ofstream out(fs::path(out_dir) / "strength_scores.csv", std::ios::binary);
    out << "metric,dataset,anonymizer,deanonymizer,strength_type,monotonicity,evenness,shared_range\n";
    for (const auto& s : strengths) {
      out << s.metric << ',' << s.id.dataset << ',' << s.id.anonymizer << ','
          << s.id.deanonymizer << ',' << s.id.strength_type << ','
          << format_value(s.scores.monotonicity) << ',' << format_value(s.scores.evenness)
          << ',' << format_value(s.scores.shared_range) << '\n';
    }
  }

  // (b) heatmap matrix: one row per metric, one column per scenario
  std::set<std::string> scenario_ids;
  std::map<std::string, std::map<std::string, double>> mono;  // metric -> scenario -> score
  for (const auto& s : strengths) {
    scenario_ids.insert(s.id.str());
    mono[s.metric][s.id.str()] = s.scores.monotonicity;
  }
  {
    std::ofstream out(fs::path(out_dir) / "heatmap_monotonicity.csv", std::ios::binary);
    out << "metric";
    for (const auto& id : scenario_ids) out << ',' << id;
    out << '\n';
    for (const auto& d : metric_registry()) {
      out << d.name;
      const auto it = mono.find(std::string(d.name));
      for (const auto& id : scenario_ids) {
        out << ',';
        if (it != mono.end()) {
          auto sit = it->second.find(id);
          if (sit != it->second.end()) out << format_value(sit->second);
        }
      }
      out << '\n';
    }
  }

  // (c) boxplot data: monotonicity score distribution per metric
  {
    std::ofstream out(fs::path(out_dir) / "boxplot_monotonicity.csv", std::ios::binary);
    out << "metric,scenario_id,monotonicity\n";
    for (const auto& s : strengths) {
      out << s.metric << ',' << s.id.str() << ',' << format_value(s.scores.monotonicity) << '\n';
    }
  }

  // Mean monotonicity ranking, used for the summary and the suite search.
  std::map<std::string, std::pair<double, std::size_t>> mono_sum;
  std::map<std::string, std::pair<double, std::size_t>> even_sum;
  std::map<std::string, std::pair<double, std::size_t>> range_sum;
  for (const auto& s : strengths) {
    mono_sum[s.metric].first += s.scores.monotonicity;
    mono_sum[s.metric].second += 1;
    even_sum[s.metric].first += s.scores.evenness;
    even_sum[s.metric].second += 1;
    range_sum[s.metric].first += s.scores.shared_range;
    range_sum[s.metric].second += 1;
  }
  std::vector<std::pair<std::string, double>> ranking;
  for (const auto& [metric, acc] : mono_sum) {
    ranking.emplace_back(metric, acc.first / static_cast<double>(acc.second));
  }
  std::sort(ranking.begin(), ranking.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });

  // (d) suite report: presets plus the best suites over the top-7 metrics
  const auto matrices_by_id = scenario_matrices(store);
  std::vector<AlternativeMatrix> matrices;
  for (const auto& [id, m] : matrices_by_id) {
    (void)id;
    if (m.x.size() >= 2) matrices.push_back(m);
  }
  {
    std::ofstream out(fs::path(out_dir) / "suites.csv", std::ios::binary);
    out << "suite,members,weights,scenario_monotonic_percent,pair_fraction\n";
    auto emit = [&](const SuiteSpec& suite, const SuiteQuality& q) {
      out << suite.name << ',';
      for (std::size_t i = 0; i < suite.members.size(); ++i) {
        if (i) out << ';';
        out << suite.members[i].first;
      }
      out << ',';
      for (std::size_t i = 0; i < suite.members.size(); ++i) {
        if (i) out << ';';
        out << format_value(suite.members[i].second);
      }
      out << ',' << format_value(q.scenario_monotonic_percent) << ','
          << format_value(q.pair_fraction) << '\n';
    };
    if (!matrices.empty()) {
      for (const auto& suite : builtin_suites()) {
        emit(suite, suite_monotonic_fraction(matrices, suite));
      }
      std::vector<std::string> top;
      for (const auto& [metric, score] : ranking) {
        (void)score;
        if (top.size() == 7) break;
        top.push_back(metric);
      }
      if (!top.empty()) {
        auto searched = search_suites(top, matrices);
        const std::size_t emit_count = std::min<std::size_t>(searched.size(), 5);
        for (std::size_t i = 0; i < emit_count; ++i) {
          emit(searched[i].first, searched[i].second);
        }
      }
    }
  }

  // (e) summary json with the metric ranking
  {
    json summary;
    summary["version"] = library_version();
    summary["config_hash"] = store.config_hash();
    summary["scenario_count"] = scenario_ids.size();
    json metrics = json::array();
    for (const auto& [metric, mono_mean] : ranking) {
      json m;
      m["name"] = metric;
      m["mean_monotonicity"] = mono_mean;
      m["mean_evenness"] = even_sum[metric].first / static_cast<double>(even_sum[metric].second);
      m["mean_shared_range"] =
          range_sum[metric].first / static_cast<double>(range_sum[metric].second);
      metrics.push_back(std::move(m));
    }
    summary["metrics_by_monotonicity"] = std::move(metrics);
    std::ofstream out(fs::path(out_dir) / "summary.json", std::ios::binary);
    out << summary.dump(2) << '\n';
  }
}

}  // namespace graphpriv
