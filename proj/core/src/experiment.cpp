#include <graphpriv/experiment.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string_view>
#include <thread>

#include <json.hpp>

#include <graphpriv/errors.hpp>
#include <graphpriv/stats.hpp>

namespace graphpriv {

using json = nlohmann::json;
namespace fs = std::filesystem;

const char* library_version() { return "0.1.0"; }

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string dataset_name(const std::string& path) {
  auto stem = fs::path(path).stem().string();
  return stem.empty() ? path : stem;
}

json anonymizer_to_json(const AnonymizerConfig& a) {
  json j;
  j["kind"] = anonymizer_name(a.kind);
  switch (a.kind) {
    case AnonymizerKind::edge_switch: j["fraction"] = a.switch_fraction; break;
    case AnonymizerKind::k_da: j["k"] = a.k; break;
    case AnonymizerKind::dp: j["epsilon"] = a.epsilon; break;
    case AnonymizerKind::random_walk: j["distance"] = a.walk_distance; break;
    case AnonymizerKind::t_means: j["max_size"] = a.tmeans_max_size; break;
    case AnonymizerKind::id_removal: break;
  }
  return j;
}

AnonymizerConfig anonymizer_from_json(const json& j) {
  AnonymizerConfig a;
  a.kind = anonymizer_from_name(j.at("kind").get<std::string>());
  a.switch_fraction = j.value("fraction", a.switch_fraction);
  a.k = j.value("k", a.k);
  a.epsilon = j.value("epsilon", a.epsilon);
  a.walk_distance = j.value("distance", a.walk_distance);
  a.tmeans_max_size = j.value("max_size", a.tmeans_max_size);
  return a;
}

json deanonymizer_to_json(const DeanonConfig& d) {
  json j;
  j["kind"] = deanonymizer_name(d.kind);
  j["theta"] = d.theta;
  j["chunk_size"] = d.chunk_size;
  switch (d.kind) {
    case DeanonKind::jlsb:
      j["w_degree"] = d.jlsb_w_degree;
      j["w_neighbor"] = d.jlsb_w_neighbor;
      j["w_refdist"] = d.jlsb_w_refdist;
      break;
    case DeanonKind::ada:
      j["w_distance"] = d.ada_w_distance;
      j["w_structural"] = d.ada_w_structural;
      j["w_inheritance"] = d.ada_w_inheritance;
      j["epsilon"] = d.ada_epsilon;
      j["betweenness_samples"] = d.betweenness_samples;
      break;
    default:
      break;
  }
  return j;
}

DeanonConfig deanonymizer_from_json(const json& j) {
  auto d = DeanonConfig::defaults_for(deanonymizer_from_name(j.at("kind").get<std::string>()));
  d.theta = j.value("theta", d.theta);
  d.chunk_size = j.value("chunk_size", d.chunk_size);
  d.jlsb_w_degree = j.value("w_degree", d.jlsb_w_degree);
  d.jlsb_w_neighbor = j.value("w_neighbor", d.jlsb_w_neighbor);
  d.jlsb_w_refdist = j.value("w_refdist", d.jlsb_w_refdist);
  d.ada_w_distance = j.value("w_distance", d.ada_w_distance);
  d.ada_w_structural = j.value("w_structural", d.ada_w_structural);
  d.ada_w_inheritance = j.value("w_inheritance", d.ada_w_inheritance);
  d.ada_epsilon = j.value("epsilon", d.ada_epsilon);
  d.betweenness_samples = j.value("betweenness_samples", d.betweenness_samples);
  return d;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (datasets.empty()) throw config_error("config: no datasets");
  if (anonymizers.empty()) throw config_error("config: no anonymizers");
  if (deanonymizers.empty()) throw config_error("config: no deanonymizers");
  if (strength_types.empty()) throw config_error("config: no strength types");
  for (const auto& t : strength_types) {
    if (t != "seeds" && t != "aux") throw config_error("config: unknown strength type " + t);
  }
  auto strictly_increasing = [](const auto& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (!(v[i] > v[i - 1])) return false;
    }
    return !v.empty();
  };
  if (!strictly_increasing(seed_schedule)) throw config_error("config: seed schedule must be strictly increasing");
  if (!strictly_increasing(aux_schedule)) throw config_error("config: aux schedule must be strictly increasing");
  if (!(replication.relative_error > 0.0) || replication.relative_error >= 1.0) {
    throw config_error("config: relative error must be in (0,1)");
  }
  if (replication.min_replications < 2) throw config_error("config: need at least 2 replications");
  if (replication.max_replications < replication.min_replications) {
    throw config_error("config: max replications below minimum");
  }
  if (!(replication.confidence > 0.0) || replication.confidence >= 1.0) {
    throw config_error("config: confidence must be in (0,1)");
  }
  for (const auto& a : anonymizers) a.validate();
  for (const auto& d : deanonymizers) d.validate();
}

std::string ExperimentConfig::to_json() const {
  json j;
  j["datasets"] = datasets;
  j["anonymizers"] = json::array();
  for (const auto& a : anonymizers) j["anonymizers"].push_back(anonymizer_to_json(a));
  j["deanonymizers"] = json::array();
  for (const auto& d : deanonymizers) j["deanonymizers"].push_back(deanonymizer_to_json(d));
  j["seed_schedule"] = seed_schedule;
  j["aux_schedule"] = aux_schedule;
  j["defaults"] = {{"seed_count", default_seed_count}, {"aux_ratio", default_aux_ratio}};
  j["strength_types"] = strength_types;
  j["replication"] = {{"min", replication.min_replications},
                      {"max", replication.max_replications},
                      {"batch", replication.batch_size},
                      {"relative_error", replication.relative_error},
                      {"confidence", replication.confidence},
                      {"timeout_seconds", replication.timeout_seconds}};
  j["metric_params"] = {{"quantile_cutoff", metric_params.quantile_cutoff},
                        {"tau_hiding", metric_params.tau_hiding},
                        {"tau_innocence", metric_params.tau_innocence}};
  j["master_seed"] = master_seed;
  j["per_node_dump"] = per_node_dump;
  j["output_dir"] = output_dir;
  return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw config_error("config: malformed JSON");

  ExperimentConfig cfg;
  cfg.datasets = j.at("datasets").get<std::vector<std::string>>();
  for (const auto& a : j.at("anonymizers")) cfg.anonymizers.push_back(anonymizer_from_json(a));
  for (const auto& d : j.at("deanonymizers")) cfg.deanonymizers.push_back(deanonymizer_from_json(d));
  if (j.contains("seed_schedule")) cfg.seed_schedule = j.at("seed_schedule").get<std::vector<std::size_t>>();
  if (j.contains("aux_schedule")) cfg.aux_schedule = j.at("aux_schedule").get<std::vector<double>>();
  if (j.contains("defaults")) {
    cfg.default_seed_count = j["defaults"].value("seed_count", cfg.default_seed_count);
    cfg.default_aux_ratio = j["defaults"].value("aux_ratio", cfg.default_aux_ratio);
  }
  if (j.contains("strength_types")) cfg.strength_types = j.at("strength_types").get<std::vector<std::string>>();
  if (j.contains("replication")) {
    const auto& r = j["replication"];
    cfg.replication.min_replications = r.value("min", cfg.replication.min_replications);
    cfg.replication.max_replications = r.value("max", cfg.replication.max_replications);
    cfg.replication.batch_size = r.value("batch", cfg.replication.batch_size);
    cfg.replication.relative_error = r.value("relative_error", cfg.replication.relative_error);
    cfg.replication.confidence = r.value("confidence", cfg.replication.confidence);
    cfg.replication.timeout_seconds = r.value("timeout_seconds", cfg.replication.timeout_seconds);
  }
  if (j.contains("metric_params")) {
    const auto& m = j["metric_params"];
    cfg.metric_params.quantile_cutoff = m.value("quantile_cutoff", cfg.metric_params.quantile_cutoff);
    cfg.metric_params.tau_hiding = m.value("tau_hiding", cfg.metric_params.tau_hiding);
    cfg.metric_params.tau_innocence = m.value("tau_innocence", cfg.metric_params.tau_innocence);
  }
  cfg.master_seed = j.value("master_seed", cfg.master_seed);
  cfg.per_node_dump = j.value("per_node_dump", cfg.per_node_dump);
  cfg.output_dir = j.value("output_dir", cfg.output_dir);
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a(to_json()); }

void ResultStore::set_config(const ExperimentConfig& cfg) {
  config_json_ = cfg.to_json();
  config_hash_ = cfg.hash();
}

void ResultStore::set_level_values(const std::string& scenario_id, std::vector<double> values) {
  levels_[scenario_id] = std::move(values);
}

void ResultStore::add(ResultRecord record) { records_.push_back(std::move(record)); }
void ResultStore::add_per_node(PerNodeRecord record) { per_node_.push_back(std::move(record)); }
void ResultStore::add_skipped(SkippedReplication skipped) { skipped_.push_back(std::move(skipped)); }

void ResultStore::finalize() {
  std::sort(records_.begin(), records_.end(),
            [](const ResultRecord& a, const ResultRecord& b) { return a.key() < b.key(); });
  std::sort(per_node_.begin(), per_node_.end(), [](const PerNodeRecord& a, const PerNodeRecord& b) {
    return std::tie(a.scenario_id, a.level, a.replication, a.metric, a.node) <
           std::tie(b.scenario_id, b.level, b.replication, b.metric, b.node);
  });
  std::sort(skipped_.begin(), skipped_.end(), [](const SkippedReplication& a, const SkippedReplication& b) {
    return std::tie(a.scenario_id, a.level, a.replication) <
           std::tie(b.scenario_id, b.level, b.replication);
  });
}

std::string ResultStore::manifest_json() const {
  json j;
  j["version"] = library_version();
  j["config_hash"] = config_hash_;
  j["config"] = json::parse(config_json_.empty() ? "{}" : config_json_);
  j["record_count"] = records_.size();
  j["per_node_count"] = per_node_.size();
  j["skipped_count"] = skipped_.size();
  json levels = json::object();
  for (const auto& [scenario, values] : levels_) levels[scenario] = values;
  j["levels"] = std::move(levels);
  return j.dump(2);
}

void ResultStore::write(const std::string& dir) const {
  fs::create_directories(dir);
  {
    std::ofstream out(fs::path(dir) / "manifest.json", std::ios::binary);
    if (!out) throw data_error("cannot write manifest in " + dir);
    out << manifest_json() << '\n';
  }
  {
    std::ofstream out(fs::path(dir) / "results.csv", std::ios::binary);
    out << "scenario_id,level,replication,metric,value\n";
    for (const auto& r : records_) {
      out << r.scenario_id << ',' << r.level << ',' << r.replication << ',' << r.metric
          << ',' << format_value(r.value) << '\n';
    }
  }
  if (!per_node_.empty()) {
    std::ofstream out(fs::path(dir) / "per_node.csv", std::ios::binary);
    out << "scenario_id,level,replication,metric,node,value\n";
    for (const auto& r : per_node_) {
      out << r.scenario_id << ',' << r.level << ',' << r.replication << ',' << r.metric
          << ',' << r.node << ',' << format_value(r.value) << '\n';
    }
  }
  if (!skipped_.empty()) {
    std::ofstream out(fs::path(dir) / "skipped.csv", std::ios::binary);
    out << "scenario_id,level,replication\n";
    for (const auto& s : skipped_) {
      out << s.scenario_id << ',' << s.level << ',' << s.replication << '\n';
    }
  }
}

ResultStore ResultStore::read(const std::string& dir) {
  ResultStore store;
  {
    std::ifstream in(fs::path(dir) / "manifest.json");
    if (!in) throw data_error("cannot read manifest in " + dir);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw data_error("malformed manifest in " + dir);
    store.config_json_ = j.at("config").dump(2);
    store.config_hash_ = j.value("config_hash", std::uint64_t{0});
    if (j.contains("levels")) {
      for (const auto& [scenario, values] : j["levels"].items()) {
        store.levels_[scenario] = values.get<std::vector<double>>();
      }
    }
  }
  auto split = [](const std::string& line, int expected) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    out.push_back(cur);
    if (static_cast<int>(out.size()) != expected) throw data_error("malformed store row: " + line);
    return out;
  };
  auto to_int = [](const std::string& s) {
    try {
      return std::stoi(s);
    } catch (const std::exception&) {
      throw data_error("malformed integer in store: " + s);
    }
  };
  auto to_double = [](const std::string& s) {
    try {
      return std::stod(s);
    } catch (const std::exception&) {
      throw data_error("malformed number in store: " + s);
    }
  };
  {
    std::ifstream in(fs::path(dir) / "results.csv");
    if (!in) throw data_error("cannot read results.csv in " + dir);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto f = split(line, 5);
      store.records_.push_back({f[0], to_int(f[1]), to_int(f[2]), f[3], to_double(f[4])});
    }
  }
  if (fs::exists(fs::path(dir) / "per_node.csv")) {
    std::ifstream in(fs::path(dir) / "per_node.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto f = split(line, 6);
      store.per_node_.push_back({f[0], to_int(f[1]), to_int(f[2]), f[3],
                                 static_cast<NodeId>(to_int(f[4])), to_double(f[5])});
    }
  }
  if (fs::exists(fs::path(dir) / "skipped.csv")) {
    std::ifstream in(fs::path(dir) / "skipped.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto f = split(line, 3);
      store.skipped_.push_back({f[0], to_int(f[1]), to_int(f[2])});
    }
  }
  store.finalize();
  return store;
}

namespace {

struct ReplicationOutput {
  bool skipped = false;
  std::vector<std::pair<std::string_view, double>> per_graph;  // 26 entries
  std::vector<PerNodeRecord> per_node;  // filled only when dumping
};

ReplicationOutput run_replication(const Graph& original, const AnonymizerConfig& anon_cfg,
                                  const DeanonConfig& deanon_cfg, std::size_t seed_count,
                                  double aux_ratio, const MetricParams& params,
                                  std::uint64_t rep_seed, double timeout_seconds,
                                  bool dump_per_node) {
  const auto start = std::chrono::steady_clock::now();

  AnonymizerConfig a = anon_cfg;
  a.seed = Rng::mix(rep_seed, 1);
  auto [anon_graph, anon_map] = anonymize(original, a);

  auto knowledge = make_knowledge(original, anon_graph, anon_map, aux_ratio, seed_count,
                                  Rng::mix(rep_seed, 2));
  DeanonConfig d = deanon_cfg;
  d.seed = Rng::mix(rep_seed, 3);
  auto estimate = deanonymize(knowledge, d);

  ReplicationOutput out;
  if (timeout_seconds > 0.0) {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    if (elapsed.count() > timeout_seconds) {
      out.skipped = true;
      return out;
    }
  }

  const MetricSet metrics = evaluate_all(estimate, params);
  out.per_graph.reserve(metrics.all().size());
  for (const auto& r : metrics.all()) {
    out.per_graph.emplace_back(r.descriptor->name, r.per_graph);
    if (dump_per_node) {
      for (const auto& [node, value] : r.per_node) {
        out.per_node.push_back({"", 0, 0, std::string(r.descriptor->name), node, value});
      }
    }
  }
  return out;
}

}  // namespace

ResultStore run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();

  std::vector<std::pair<std::string, Graph>> datasets;
  for (const auto& path : cfg.datasets) {
    datasets.emplace_back(dataset_name(path), largest_connected_component(load_edge_list(path)));
  }

  ResultStore store;
  store.set_config(cfg);

  const std::size_t workers = cfg.workers > 0
                                  ? cfg.workers
                                  : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const auto& registry = metric_registry();

  for (const auto& [ds_name, graph] : datasets) {
    for (const auto& anon_cfg : cfg.anonymizers) {
      for (const auto& deanon_cfg : cfg.deanonymizers) {
        for (const auto& strength_type : cfg.strength_types) {
          const ScenarioId sid{ds_name, anonymizer_name(anon_cfg.kind),
                               deanonymizer_name(deanon_cfg.kind), strength_type};
          const std::string scenario = sid.str();
          const std::uint64_t scenario_seed = Rng::mix(cfg.master_seed, fnv1a(scenario));

          const std::size_t level_count =
              strength_type == "seeds" ? cfg.seed_schedule.size() : cfg.aux_schedule.size();
          std::vector<double> level_values;
          for (std::size_t li = 0; li < level_count; ++li) {
            level_values.push_back(strength_type == "seeds"
                                       ? static_cast<double>(cfg.seed_schedule[li])
                                       : cfg.aux_schedule[li]);
          }
          store.set_level_values(scenario, level_values);

          for (std::size_t li = 0; li < level_count; ++li) {
            const std::size_t seed_count =
                strength_type == "seeds" ? cfg.seed_schedule[li] : cfg.default_seed_count;
            const double aux_ratio =
                strength_type == "aux" ? cfg.aux_schedule[li] : cfg.default_aux_ratio;
            const std::uint64_t level_seed = Rng::mix(scenario_seed, li);

            std::vector<ReplicationOutput> outputs;
            std::map<std::string_view, std::vector<double>> samples;

            std::size_t done = 0;
            bool stop = false;
            while (!stop) {
              const std::size_t target =
                  done == 0 ? cfg.replication.min_replications
                            : std::min(done + cfg.replication.batch_size,
                                       cfg.replication.max_replications);
              const std::size_t batch = target - done;
              const std::size_t base = outputs.size();
              outputs.resize(base + batch);

              std::atomic<std::size_t> cursor{0};
              auto work = [&]() {
                while (true) {
                  const std::size_t i = cursor.fetch_add(1);
                  if (i >= batch) break;
                  outputs[base + i] = run_replication(
                      graph, anon_cfg, deanon_cfg, seed_count, aux_ratio, cfg.metric_params,
                      Rng::mix(level_seed, done + i), cfg.replication.timeout_seconds,
                      cfg.per_node_dump);
                }
              };
              std::vector<std::thread> pool;
              for (std::size_t w = 1; w < std::min(workers, batch); ++w) pool.emplace_back(work);
              work();
              for (auto& t : pool) t.join();

              for (std::size_t i = 0; i < batch; ++i) {
                const auto& out = outputs[base + i];
                if (out.skipped) continue;
                for (const auto& [metric, value] : out.per_graph) {
                  samples[metric].push_back(value);
                }
              }
              done = target;

              if (done >= cfg.replication.max_replications) {
                stop = true;
              } else if (done >= cfg.replication.min_replications) {
                stop = true;
                for (const auto& d : registry) {
                  auto it = samples.find(d.name);
                  if (it == samples.end() || it->second.size() < 2) {
                    stop = false;
                    break;
                  }
                  const auto [m, half] = stats::mean_ci(it->second, cfg.replication.confidence);
                  if (half > cfg.replication.relative_error * std::max(std::fabs(m), 0.01)) {
                    stop = false;
                    break;
                  }
                }
              }
            }

            for (std::size_t rep = 0; rep < outputs.size(); ++rep) {
              auto& out = outputs[rep];
              if (out.skipped) {
                store.add_skipped({scenario, static_cast<int>(li), static_cast<int>(rep)});
                continue;
              }
              for (const auto& [metric, value] : out.per_graph) {
                store.add({scenario, static_cast<int>(li), static_cast<int>(rep),
                           std::string(metric), value});
              }
              for (auto& pn : out.per_node) {
                pn.scenario_id = scenario;
                pn.level = static_cast<int>(li);
                pn.replication = static_cast<int>(rep);
                store.add_per_node(std::move(pn));
              }
            }
          }
        }
      }
    }
  }

  store.finalize();
  if (!cfg.output_dir.empty()) store.write(cfg.output_dir);
  return store;
}

}  // namespace graphpriv
