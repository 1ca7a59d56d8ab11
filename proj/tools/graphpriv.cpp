// Command line front end: graph statistics, single anonymization /
// de-anonymization runs, metric evaluation, and full experiment grids.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <graphpriv/anonymizers.hpp>
#include <graphpriv/deanonymizers.hpp>
#include <graphpriv/errors.hpp>
#include <graphpriv/experiment.hpp>
#include <graphpriv/metrics.hpp>

namespace {

using namespace graphpriv;

// Mapping rows as written: original node label, anonymized node label.
std::vector<std::pair<std::string, std::string>> read_mapping_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open mapping file: " + path);
  std::vector<std::pair<std::string, std::string>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first && line.rfind("original_id", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw data_error("malformed mapping row: " + line);
    rows.emplace_back(line.substr(0, comma), line.substr(comma + 1));
  }
  return rows;
}

// Re-loading an edge list interns ids in first-seen order, so the dense ids
// of a written graph do not survive a round-trip; only labels do. Resolves
// the mapping through both label maps and pads the anonymized graph with
// isolated nodes for mapped ids that carry no edges (for example after DP
// regeneration).
std::pair<Graph, NodeMapping> resolve_mapping(const Graph& original, Graph anonymized,
                                              const std::string& mapping_path) {
  std::unordered_map<std::string, NodeId> orig_ids, anon_ids;
  for (NodeId v = 0; v < original.node_count(); ++v) orig_ids.emplace(original.label(v), v);
  for (NodeId v = 0; v < anonymized.node_count(); ++v) anon_ids.emplace(anonymized.label(v), v);

  const auto rows = read_mapping_rows(mapping_path);
  std::vector<std::string> padded_labels = anonymized.labels();
  NodeMapping mapping(/*is_ground_truth=*/true);
  for (const auto& [orig_label, anon_label] : rows) {
    auto o = orig_ids.find(orig_label);
    if (o == orig_ids.end()) throw data_error("mapping refers to unknown node: " + orig_label);
    auto a = anon_ids.find(anon_label);
    NodeId anon_id;
    if (a != anon_ids.end()) {
      anon_id = a->second;
    } else {
      anon_id = static_cast<NodeId>(padded_labels.size());
      padded_labels.push_back(anon_label);
      anon_ids.emplace(anon_label, anon_id);
    }
    mapping.add(o->second, anon_id);
  }
  if (padded_labels.size() != anonymized.node_count()) {
    anonymized = Graph(padded_labels.size(), anonymized.edges(), std::move(padded_labels));
  }
  return {std::move(anonymized), std::move(mapping)};
}

void write_mapping_csv(const std::string& path, const Graph& original,
                       const NodeMapping& mapping) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write mapping file: " + path);
  out << "original_id,anonymized_id\n";
  for (const auto& [from, to] : mapping.pairs()) {
    out << original.label(from) << ',' << to << '\n';
  }
}

AnonymizerConfig parse_anonymizer(const std::string& algo,
                                  const std::vector<std::string>& params) {
  AnonymizerConfig cfg;
  cfg.kind = anonymizer_from_name(algo);
  for (const auto& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw config_error("--param expects key=value, got: " + p);
    const std::string key = p.substr(0, eq);
    const std::string value = p.substr(eq + 1);
    if (key == "r" || key == "fraction") {
      cfg.switch_fraction = std::stod(value);
    } else if (key == "k") {
      cfg.k = std::stoul(value);
    } else if (key == "epsilon" || key == "eps") {
      cfg.epsilon = std::stod(value);
    } else if (key == "t" || key == "distance") {
      cfg.walk_distance = std::stoul(value);
    } else if (key == "max_size") {
      cfg.tmeans_max_size = std::stoul(value);
    } else {
      throw config_error("unknown anonymizer parameter: " + key);
    }
  }
  return cfg;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"graphpriv: graph anonymization, de-anonymization, and privacy-metric "
               "strength evaluation"};
  app.require_subcommand(1);

  // ---- stats ----
  auto* stats_cmd = app.add_subcommand("stats", "Graph statistics for an edge list");
  std::string stats_in, stats_out;
  std::size_t stats_sample = 64;
  bool stats_exact = false;
  stats_cmd->add_option("input", stats_in, "edge list file")->required();
  stats_cmd->add_option("--sample", stats_sample, "BFS source sample for distance stats");
  stats_cmd->add_flag("--exact", stats_exact, "BFS from every node");
  stats_cmd->add_option("--out", stats_out, "write CSV here instead of stdout");

  // ---- anonymize ----
  auto* anon_cmd = app.add_subcommand("anonymize", "Anonymize a graph");
  std::string anon_algo = "idrem", anon_in, anon_out, anon_map;
  std::vector<std::string> anon_params;
  std::uint64_t anon_seed = 0;
  anon_cmd->add_option("--algo", anon_algo, "idrem|switch|kda|dp|rw|tmeans")->required();
  anon_cmd->add_option("--param", anon_params, "algorithm parameter key=value (repeatable)");
  anon_cmd->add_option("--seed", anon_seed, "rng seed");
  anon_cmd->add_option("input", anon_in, "input edge list")->required();
  anon_cmd->add_option("output", anon_out, "output edge list")->required();
  anon_cmd->add_option("mapping", anon_map, "ground-truth mapping CSV")->required();

  // ---- deanonymize ----
  auto* deanon_cmd = app.add_subcommand("deanonymize", "Attack an anonymized graph");
  std::string de_algo, de_orig, de_anon, de_map, de_out;
  std::size_t de_seeds = 50, de_chunk = 100;
  double de_ratio = 0.85;
  double de_theta = -1.0;
  std::uint64_t de_seed = 0;
  deanon_cmd->add_option("--algo", de_algo, "ns|kl|yg|dv|jlsb|ada")->required();
  deanon_cmd->add_option("--seeds", de_seeds, "number of seed mappings");
  deanon_cmd->add_option("--aux-ratio", de_ratio, "auxiliary graph overlap ratio");
  deanon_cmd->add_option("--chunk", de_chunk, "chunk size (KL/DV/JLSB/ADA)");
  deanon_cmd->add_option("--theta", de_theta, "acceptance threshold (default per algorithm)");
  deanon_cmd->add_option("--seed", de_seed, "rng seed");
  deanon_cmd->add_option("original", de_orig, "original edge list")->required();
  deanon_cmd->add_option("anonymized", de_anon, "anonymized edge list")->required();
  deanon_cmd->add_option("mapping", de_map, "original->anonymized mapping CSV")->required();
  deanon_cmd->add_option("output", de_out, "estimate dump (JSON lines)")->required();

  // ---- metrics ----
  auto* metrics_cmd = app.add_subcommand("metrics", "Privacy metrics for an estimate dump");
  std::string m_in, m_out, m_scenario = "adhoc";
  int m_replication = 0;
  double m_quantile = 0.01, m_hiding = 0.5, m_innocence = 0.5;
  bool m_per_node = false;
  metrics_cmd->add_option("input", m_in, "estimate dump (JSON lines)")->required();
  metrics_cmd->add_option("--out", m_out, "write CSV here instead of stdout");
  metrics_cmd->add_option("--scenario-id", m_scenario, "scenario id column value");
  metrics_cmd->add_option("--replication", m_replication, "replication column value");
  metrics_cmd->add_option("--quantile-cutoff", m_quantile, "quantiles-on-entropy cutoff");
  metrics_cmd->add_option("--tau-hiding", m_hiding, "hiding property threshold");
  metrics_cmd->add_option("--tau-innocence", m_innocence, "innocence threshold");
  metrics_cmd->add_flag("--per-node", m_per_node, "also emit per-node rows");

  // ---- run ----
  auto* run_cmd = app.add_subcommand("run", "Run a full experiment grid");
  std::string run_config, run_out;
  std::size_t run_workers = 0;
  bool run_report = false;
  run_cmd->add_option("--config", run_config, "experiment config JSON")->required();
  run_cmd->add_option("--out", run_out, "output directory (overrides config)");
  run_cmd->add_option("--workers", run_workers, "worker threads (overrides GRAPHPRIV_WORKERS)");
  run_cmd->add_flag("--report", run_report, "build reports after the run");

  // ---- report ----
  auto* report_cmd = app.add_subcommand("report", "Build reports from a result store");
  std::string rep_store, rep_out;
  report_cmd->add_option("--store", rep_store, "result store directory")->required();
  report_cmd->add_option("--out", rep_out, "report output directory")->required();

  // ---- suite ----
  auto* suite_cmd = app.add_subcommand("suite", "Evaluate and search metric suites");
  std::string suite_store, suite_out;
  std::vector<std::string> suite_candidates;
  std::size_t suite_top = 10;
  suite_cmd->add_option("--store", suite_store, "result store directory")->required();
  suite_cmd->add_option("--candidates", suite_candidates,
                        "candidate metrics for subset search (default: built-in presets only)");
  suite_cmd->add_option("--top", suite_top, "number of searched suites to print");
  suite_cmd->add_option("--out", suite_out, "write CSV here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  if (*stats_cmd) {
    Graph g = largest_connected_component(load_edge_list(stats_in));
    const std::size_t sample = stats_exact ? g.node_count() : stats_sample;
    const GraphStats stats = compute_graph_stats(g, sample);
    std::ostringstream csv;
    csv << GraphStats::csv_header() << '\n' << stats.csv_row(stats_in) << '\n';
    if (stats_out.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream out(stats_out);
      if (!out) throw data_error("cannot write " + stats_out);
      out << csv.str();
    }
    return 0;
  }

  if (*anon_cmd) {
    auto cfg = parse_anonymizer(anon_algo, anon_params);
    cfg.seed = anon_seed;
    Graph g = load_edge_list(anon_in);
    auto [anonymized, mapping] = anonymize(g, cfg);
    write_edge_list(anonymized, anon_out);
    write_mapping_csv(anon_map, g, mapping);
    std::cout << "anonymized " << g.node_count() << " nodes, " << anonymized.edge_count()
              << " edges with " << anonymizer_name(cfg.kind) << '\n';
    return 0;
  }

  if (*deanon_cmd) {
    auto cfg = DeanonConfig::defaults_for(deanonymizer_from_name(de_algo));
    if (de_theta >= 0.0) cfg.theta = de_theta;
    cfg.chunk_size = de_chunk;
    cfg.seed = de_seed;
    Graph original = load_edge_list(de_orig);
    auto [anonymized, mapping] = resolve_mapping(original, load_edge_list(de_anon), de_map);
    auto knowledge = make_knowledge(original, anonymized, mapping, de_ratio, de_seeds,
                                    Rng::mix(de_seed, 0xabcdef));
    auto estimate = deanonymize(knowledge, cfg);
    std::ofstream out(de_out);
    if (!out) throw data_error("cannot write " + de_out);
    estimate.dump_jsonl(out);
    std::cout << "attempted " << estimate.attempted_count() << " of " << estimate.total_nodes
              << " nodes\n";
    return 0;
  }

  if (*metrics_cmd) {
    std::ifstream in(m_in);
    if (!in) throw data_error("cannot open estimate dump: " + m_in);
    auto estimate = AdversaryEstimate::load_jsonl(in);
    estimate.validate();
    MetricParams params;
    params.quantile_cutoff = m_quantile;
    params.tau_hiding = m_hiding;
    params.tau_innocence = m_innocence;
    const MetricSet set = evaluate_all(estimate, params);

    std::ostringstream csv;
    csv << "scenario_id,replication,metric,level,value\n";
    for (const auto& r : set.all()) {
      csv << m_scenario << ',' << m_replication << ',' << r.descriptor->name << ','
          << (r.descriptor->level == MetricLevel::per_graph ? "per_graph" : "per_node") << ','
          << r.per_graph << '\n';
    }
    if (m_per_node) {
      for (const auto& r : set.all()) {
        for (const auto& [node, value] : r.per_node) {
          csv << m_scenario << ',' << m_replication << ',' << r.descriptor->name << ",node:"
              << node << ',' << value << '\n';
        }
      }
    }
    if (m_out.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream out(m_out);
      if (!out) throw data_error("cannot write " + m_out);
      out << csv.str();
    }
    return 0;
  }

  if (*run_cmd) {
    auto cfg = ExperimentConfig::from_json_file(run_config);
    if (!run_out.empty()) cfg.output_dir = run_out;
    if (run_workers > 0) {
      cfg.workers = run_workers;
    } else if (const char* env = std::getenv("GRAPHPRIV_WORKERS")) {
      cfg.workers = std::stoul(env);
    }
    auto store = run_experiment(cfg);
    std::cout << "wrote " << store.records().size() << " records to " << cfg.output_dir << '\n';
    if (run_report) {
      build_reports(store, cfg.output_dir);
      std::cout << "reports written to " << cfg.output_dir << '\n';
    }
    return 0;
  }

  if (*report_cmd) {
    auto store = ResultStore::read(rep_store);
    build_reports(store, rep_out);
    std::cout << "reports written to " << rep_out << '\n';
    return 0;
  }

  if (*suite_cmd) {
    auto store = ResultStore::read(suite_store);
    const auto matrices_by_id = scenario_matrices(store);
    std::vector<AlternativeMatrix> matrices;
    for (const auto& [id, m] : matrices_by_id) {
      (void)id;
      if (m.x.size() >= 2) matrices.push_back(m);
    }
    if (matrices.empty()) throw data_error("store has no multi-level scenarios");

    std::ostringstream csv;
    csv << "suite,members,weights,scenario_monotonic_percent,pair_fraction\n";
    auto emit = [&](const SuiteSpec& suite, const SuiteQuality& q) {
      csv << suite.name << ',';
      for (std::size_t i = 0; i < suite.members.size(); ++i) {
        if (i) csv << ';';
        csv << suite.members[i].first;
      }
      csv << ',';
      for (std::size_t i = 0; i < suite.members.size(); ++i) {
        if (i) csv << ';';
        csv << suite.members[i].second;
      }
      csv << ',' << q.scenario_monotonic_percent << ',' << q.pair_fraction << '\n';
    };
    for (const auto& suite : builtin_suites()) {
      emit(suite, suite_monotonic_fraction(matrices, suite));
    }
    if (!suite_candidates.empty()) {
      auto searched = search_suites(suite_candidates, matrices);
      for (std::size_t i = 0; i < std::min(suite_top, searched.size()); ++i) {
        emit(searched[i].first, searched[i].second);
      }
    }
    if (suite_out.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream out(suite_out);
      if (!out) throw data_error("cannot write " + suite_out);
      out << csv.str();
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const graphpriv::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const graphpriv::data_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
