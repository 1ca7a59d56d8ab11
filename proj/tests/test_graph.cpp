#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <graphpriv/errors.hpp>
#include <graphpriv/graph.hpp>

#include "helpers.hpp"

using namespace graphpriv;
using namespace testing_fixtures;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  std::filesystem::create_directories("/tmp/graphpriv_tests");
  const std::string path = "/tmp/graphpriv_tests/" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

std::vector<std::size_t> sorted_degrees(const Graph& g) {
  auto d = g.degree_sequence();
  std::sort(d.begin(), d.end());
  return d;
}

// Brute-force all-pairs BFS used as the oracle for distance statistics.
std::pair<std::size_t, double> all_pairs_oracle(const Graph& g) {
  std::size_t diameter = 0;
  double sum = 0.0;
  std::size_t pairs = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    std::vector<int> dist(g.node_count(), -1);
    std::vector<NodeId> queue{s};
    dist[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId u = queue[head];
      for (NodeId w : g.neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    for (NodeId t = 0; t < g.node_count(); ++t) {
      if (t == s) continue;
      diameter = std::max<std::size_t>(diameter, static_cast<std::size_t>(dist[t]));
      sum += dist[t];
      ++pairs;
    }
  }
  return {diameter, pairs ? sum / static_cast<double>(pairs) : 0.0};
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("load_edge_list parses comments, whitespace, and extra tokens") {
  const auto path = write_temp("triangle.edges", "0 1\n1 2\n% c\n2 0\n");
  Graph g = load_edge_list(path);
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 3);
  validate_graph(g);

  const auto loops = write_temp("loops.edges", "a a\na b\n");
  Graph g2 = load_edge_list(loops);
  CHECK(g2.node_count() == 2);
  CHECK(g2.edge_count() == 1);
  CHECK(g2.label(0) == "a");
  CHECK(g2.label(1) == "b");

  const auto extra = write_temp("extra.edges", "0 1 1337 2008\n");
  Graph g3 = load_edge_list(extra);
  CHECK(g3.node_count() == 2);
  CHECK(g3.edge_count() == 1);
}

TEST_CASE("load_edge_list rejects one-token lines and missing files") {
  const auto path = write_temp("bad.edges", "0 1\n42\n");
  CHECK_THROWS_AS(load_edge_list(path), data_error);
  CHECK_THROWS_AS(load_edge_list("/tmp/graphpriv_tests/does_not_exist.edges"), data_error);
}

TEST_CASE("largest_connected_component keeps the triangle over an isolated edge") {
  Graph g(5, {{0, 1}, {1, 2}, {2, 0}, {3, 4}});
  Graph lcc = largest_connected_component(g);
  CHECK(lcc.node_count() == 3);
  CHECK(lcc.edge_count() == 3);
  validate_graph(lcc);
}

TEST_CASE("largest_connected_component is identity on connected graphs") {
  Graph g = cycle_graph(6);
  Graph lcc = largest_connected_component(g);
  CHECK(lcc.node_count() == 6);
  CHECK(sorted_degrees(lcc) == sorted_degrees(g));
  for (NodeId v = 0; v < 6; ++v) CHECK(lcc.label(v) == g.label(v));
}

TEST_CASE("largest_connected_component breaks size ties by smallest label") {
  Graph g(4, {{0, 1}, {2, 3}}, {"c", "d", "a", "b"});
  Graph lcc = largest_connected_component(g);
  REQUIRE(lcc.node_count() == 2);
  CHECK(lcc.label(0) == "a");
  CHECK(lcc.label(1) == "b");
}

TEST_CASE("largest_connected_component rejects the empty graph") {
  CHECK_THROWS_AS(largest_connected_component(Graph(0, {})), data_error);
}

TEST_CASE("permute_node_ids preserves structure and is reproducible") {
  Graph g = preferential_attachment(40, 2, 5);
  auto [p1, map1] = permute_node_ids(g, 77);
  auto [p2, map2] = permute_node_ids(g, 77);
  validate_graph(p1);
  CHECK(sorted_degrees(p1) == sorted_degrees(g));
  CHECK(map1.pairs() == map2.pairs());
  CHECK(p1.edges() == p2.edges());

  // Every original edge maps onto a permuted edge.
  for (const auto& [u, v] : g.edges()) {
    CHECK(p1.has_edge(*map1.forward(u), *map1.forward(v)));
  }

  auto [single, single_map] = permute_node_ids(Graph(1, {}), 9);
  CHECK(single.node_count() == 1);
  REQUIRE(single_map.size() == 1);
  CHECK(*single_map.forward(0) == 0);
}

TEST_CASE("sample_auxiliary with ratio 1 on a connected graph is the identity") {
  Graph g = cycle_graph(8);
  auto [aux, mapping] = sample_auxiliary(g, 1.0, 3);
  CHECK(aux.node_count() == 8);
  CHECK(aux.edge_count() == 8);
  for (NodeId v = 0; v < 8; ++v) CHECK(*mapping.forward(v) == v);
}

TEST_CASE("sample_auxiliary respects the ceiling bound and determinism") {
  Graph g = preferential_attachment(10, 2, 21);
  auto [aux1, m1] = sample_auxiliary(g, 0.6, 5);
  CHECK(aux1.node_count() <= 6);
  validate_graph(aux1);
  auto [aux2, m2] = sample_auxiliary(g, 0.6, 5);
  CHECK(aux1.edges() == aux2.edges());
  CHECK(m1.pairs() == m2.pairs());
  // Correspondence maps sampled edges onto original edges.
  for (const auto& [u, v] : aux1.edges()) {
    CHECK(g.has_edge(*m1.forward(u), *m1.forward(v)));
  }
  CHECK_THROWS_AS(sample_auxiliary(g, 0.0, 1), config_error);
  CHECK_THROWS_AS(sample_auxiliary(g, 1.5, 1), config_error);
}

TEST_CASE("graph stats on closed forms") {
  auto tri = compute_graph_stats(triangle(), 10);
  CHECK(tri.avg_degree == doctest::Approx(2.0));
  CHECK(tri.clustering_coefficient == doctest::Approx(1.0));
  CHECK(tri.diameter == 1);
  CHECK(tri.claws == 0);

  auto star = compute_graph_stats(star_graph(4), 10);
  CHECK(star.claws == 4);  // C(4,3)
  CHECK(star.clustering_coefficient == doctest::Approx(0.0));
  CHECK(star.diameter == 2);

  auto path = compute_graph_stats(path_graph(5), 10);
  CHECK(path.diameter == 4);
  CHECK(path.avg_degree == doctest::Approx(1.6));
}

TEST_CASE("graph stats match the all-pairs oracle when fully sampled") {
  Graph g = largest_connected_component(preferential_attachment(120, 2, 31));
  auto stats = compute_graph_stats(g, g.node_count());
  auto [diameter, avg_path] = all_pairs_oracle(g);
  CHECK(stats.diameter == diameter);
  CHECK(stats.avg_shortest_path == doctest::Approx(avg_path).epsilon(1e-12));
  CHECK(stats.degree_gini >= 0.0);
  CHECK(stats.degree_gini <= 1.0);
  CHECK(stats.clustering_coefficient >= 0.0);
  CHECK(stats.clustering_coefficient <= 1.0);
}

TEST_CASE("graph stats reject disconnected graphs") {
  Graph g(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(compute_graph_stats(g, 4), data_error);
}

TEST_CASE("node mapping enforces injectivity") {
  NodeMapping m;
  m.add(1, 2);
  CHECK_THROWS_AS(m.add(1, 3), data_error);
  CHECK_THROWS_AS(m.add(4, 2), data_error);
  CHECK(*m.forward(1) == 2);
  CHECK(*m.inverse(2) == 1);
  CHECK_FALSE(m.forward(9).has_value());
}

TEST_CASE("edge list round-trips through write_edge_list") {
  Graph g = preferential_attachment(30, 2, 12);
  const std::string path = "/tmp/graphpriv_tests/roundtrip.edges";
  write_edge_list(g, path);
  Graph back = load_edge_list(path);
  CHECK(back.edge_count() == g.edge_count());
  CHECK(sorted_degrees(back) == sorted_degrees(g));
}

}  // TEST_SUITE
