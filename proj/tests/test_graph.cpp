#include <doctest.h>

#include <filesystem>
#include <queue>
#include <set>

#include "oracles.hpp"
#include "qglab/errors.hpp"
#include "qglab/graph.hpp"
#include "qglab/paths.hpp"

using namespace qglab;

namespace {

// Largest r <= r_max whose induced ball is a tree, by counting induced edges.
int brute_radius(const Graph& g, Vertex x, int r_max) {
  int best = 0;
  for (int r = 1; r <= r_max; ++r) {
    std::vector<int> dist(static_cast<std::size_t>(g.n_vertices()), -1);
    std::queue<Vertex> bfs;
    dist[static_cast<std::size_t>(x)] = 0;
    bfs.push(x);
    int vertices = 0;
    while (!bfs.empty()) {
      const Vertex v = bfs.front();
      bfs.pop();
      ++vertices;
      for (Vertex u : g.neighbors(v))
        if (dist[static_cast<std::size_t>(u)] < 0 && dist[static_cast<std::size_t>(v)] < r) {
          dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
          bfs.push(u);
        }
    }
    int edges = 0;
    for (const auto& e : g.edges())
      if (dist[static_cast<std::size_t>(e.origin)] >= 0 && dist[static_cast<std::size_t>(e.terminus)] >= 0) ++edges;
    if (edges != vertices - 1) break;
    best = r;
  }
  return best;
}

}  // namespace

TEST_CASE("random regular graphs are simple, regular, connected and seed-deterministic") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Graph g = generate_graph(GraphKind::random_regular, 60, 3, seed);
    CHECK(g.n_edges() == 90);
    CHECK(g.connected());
    std::set<std::pair<int, int>> seen;
    for (const auto& e : g.edges()) {
      CHECK(e.origin < e.terminus);
      CHECK(seen.insert({e.origin, e.terminus}).second);
    }
    for (Vertex v = 0; v < g.n_vertices(); ++v) CHECK(g.neighbors(v).size() == 3u);
    CHECK(to_edge_list(g) == to_edge_list(generate_graph(GraphKind::random_regular, 60, 3, seed)));
  }
  CHECK(to_edge_list(generate_graph(GraphKind::random_regular, 60, 3, 1)) !=
        to_edge_list(generate_graph(GraphKind::random_regular, 60, 3, 2)));
  CHECK_THROWS_AS(generate_graph(GraphKind::random_regular, 7, 3, 1), ConfigError);
}

TEST_CASE("directed edge conventions") {
  const Graph g = generate_graph(GraphKind::petersen, 10, 3, 0);
  for (DirectedId b = 0; b < g.n_directed(); ++b) {
    CHECK(g.origin(b) == g.terminus(Graph::reverse(b)));
    CHECK(g.find_directed(g.origin(b), g.terminus(b)) == b);
    const auto& e = g.edge(Graph::undirected(b));
    if (b % 2 == 0) CHECK(g.origin(b) == e.origin);
  }
  for (Vertex v = 0; v < g.n_vertices(); ++v)
    for (DirectedId b : g.outgoing(v)) CHECK(g.origin(b) == v);
}

TEST_CASE("cycle edges are canonical") {
  const Graph c = generate_graph(GraphKind::cycle, 6, 2, 0);
  CHECK(c.n_edges() == 6);
  CHECK(c.edge(0) == UndirectedEdge{0, 1});
  CHECK(c.edge(1) == UndirectedEdge{0, 5});
}

TEST_CASE("injectivity radius matches the induced-ball definition") {
  CHECK(injectivity_profile(generate_graph(GraphKind::cycle, 12, 2, 0)).radius[0] == 5);
  CHECK(injectivity_profile(generate_graph(GraphKind::cycle, 13, 2, 0)).radius[0] == 5);
  CHECK(injectivity_profile(generate_graph(GraphKind::petersen, 10, 3, 0)).radius[3] == 1);
  const Graph g = generate_graph(GraphKind::random_regular, 80, 3, 4);
  const auto prof = injectivity_profile(g, 6);
  for (Vertex x = 0; x < g.n_vertices(); ++x) CHECK(prof.radius[static_cast<std::size_t>(x)] == brute_radius(g, x, 6));
  for (int r = 1; r <= 6; ++r) {
    const auto below = std::count_if(prof.radius.begin(), prof.radius.end(), [r](int rho) { return rho < r; });
    CHECK(prof.fraction[static_cast<std::size_t>(r - 1)] == doctest::Approx(below / 80.0));
  }
}

TEST_CASE("edge list round trip") {
  const Graph g = generate_graph(GraphKind::random_regular, 20, 3, 9);
  const auto path = std::filesystem::temp_directory_path() / "qglab_test_edges.txt";
  save_edge_list(g, path);
  CHECK(to_edge_list(load_edge_list(path)) == to_edge_list(g));
  std::filesystem::remove(path);
}

TEST_CASE("non-backtracking operator against its definition and adjoint identity") {
  const Graph g = generate_graph(GraphKind::random_regular, 16, 3, 5);
  const auto nd = static_cast<std::size_t>(g.n_directed());
  std::mt19937_64 rng(11);
  std::vector<std::complex<double>> f(nd), h(nd);
  for (auto& z : f) z = {oracle::uniform(rng, -1, 1), oracle::uniform(rng, -1, 1)};
  for (auto& z : h) z = {oracle::uniform(rng, -1, 1), oracle::uniform(rng, -1, 1)};
  const auto bf = nb_apply(g, f);
  // Dense definition: B(b, b') = 1 iff t(b) = o(b') and b' is not the reversal of b.
  for (std::size_t b = 0; b < nd; ++b) {
    std::complex<double> acc{};
    for (std::size_t c = 0; c < nd; ++c)
      if (g.terminus(static_cast<DirectedId>(b)) == g.origin(static_cast<DirectedId>(c)) && c != (b ^ 1)) acc += f[c];
    CHECK(std::abs(acc - bf[b]) < 1e-14);
  }
  const auto bsh = nb_apply_adjoint(g, h);
  std::complex<double> lhs{}, rhs{};
  for (std::size_t b = 0; b < nd; ++b) {
    lhs += std::conj(h[b]) * bf[b];
    rhs += std::conj(bsh[b]) * f[b];
  }
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("non-backtracking path enumeration") {
  const Graph g = generate_graph(GraphKind::random_regular, 20, 3, 2);
  for (int k = 1; k <= 3; ++k) {
    const PathSet paths(g, k);
    CHECK(paths.size() == static_cast<std::size_t>(20 * 3 * (1 << (k - 1))));
    std::set<std::vector<Vertex>> unique;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const auto p = paths.path(i);
      for (std::size_t j = 0; j + 1 < p.size(); ++j) CHECK(g.find_directed(p[j], p[j + 1]) >= 0);
      for (std::size_t j = 0; j + 2 < p.size(); ++j) CHECK(p[j] != p[j + 2]);
      CHECK(g.origin(paths.first_bond(i)) == p[0]);
      CHECK(g.terminus(paths.last_bond(i)) == p[p.size() - 1]);
      const auto r = paths.path(paths.reversed(i));
      CHECK(std::equal(p.begin(), p.end(), r.rbegin()));
      unique.insert({p.begin(), p.end()});
    }
    CHECK(unique.size() == paths.size());
  }
}
