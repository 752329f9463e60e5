#include "qglab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <queue>
#include <random>
#include <sstream>

#include "qglab/csv.hpp"
#include "qglab/errors.hpp"
#include "qglab/rng.hpp"

namespace qglab {

Graph::Graph(int n_vertices, int degree, std::vector<UndirectedEdge> edges)
    : n_(n_vertices), degree_(degree), edges_(std::move(edges)) {
  if (n_ < 1 || degree_ < 1) throw ConfigError("graph needs at least one vertex and degree >= 1");
  for (auto& e : edges_) {
    if (e.origin < 0 || e.terminus < 0 || e.origin >= n_ || e.terminus >= n_)
      throw ConfigError("edge endpoint out of range");
    if (e.origin == e.terminus) throw ConfigError("self-loop at vertex " + std::to_string(e.origin));
    if (e.origin > e.terminus) std::swap(e.origin, e.terminus);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) throw ConfigError("multi-edge in graph");
  if (static_cast<long long>(edges_.size()) * 2 != static_cast<long long>(n_) * degree_)
    throw ConfigError("edge count does not match n * degree / 2");

  std::vector<std::vector<std::pair<Vertex, DirectedId>>> adj(static_cast<std::size_t>(n_));
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [o, t] = edges_[e];
    adj[static_cast<std::size_t>(o)].push_back({t, static_cast<DirectedId>(2 * e)});
    adj[static_cast<std::size_t>(t)].push_back({o, static_cast<DirectedId>(2 * e + 1)});
  }
  adjacency_.reserve(static_cast<std::size_t>(n_ * degree_));
  outgoing_.reserve(adjacency_.capacity());
  for (Vertex v = 0; v < n_; ++v) {
    auto& list = adj[static_cast<std::size_t>(v)];
    if (static_cast<int>(list.size()) != degree_)
      throw ConfigError("vertex " + std::to_string(v) + " has degree " + std::to_string(list.size()) +
                        ", expected " + std::to_string(degree_));
    std::sort(list.begin(), list.end());
    for (const auto& [u, b] : list) {
      adjacency_.push_back(u);
      outgoing_.push_back(b);
    }
  }
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  return {adjacency_.data() + static_cast<std::size_t>(v) * degree_, static_cast<std::size_t>(degree_)};
}

std::span<const DirectedId> Graph::outgoing(Vertex v) const {
  return {outgoing_.data() + static_cast<std::size_t>(v) * degree_, static_cast<std::size_t>(degree_)};
}

Vertex Graph::origin(DirectedId b) const {
  const auto& e = edges_[static_cast<std::size_t>(b >> 1)];
  return (b & 1) ? e.terminus : e.origin;
}

Vertex Graph::terminus(DirectedId b) const {
  const auto& e = edges_[static_cast<std::size_t>(b >> 1)];
  return (b & 1) ? e.origin : e.terminus;
}

DirectedId Graph::find_directed(Vertex u, Vertex v) const {
  const auto nb = neighbors(u);
  const auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return -1;
  return outgoing(u)[static_cast<std::size_t>(it - nb.begin())];
}

bool Graph::connected() const {
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex u : neighbors(v)) {
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == n_;
}

GraphKind parse_graph_kind(const std::string& name) {
  if (name == "random_regular") return GraphKind::random_regular;
  if (name == "cycle") return GraphKind::cycle;
  if (name == "complete") return GraphKind::complete;
  if (name == "petersen") return GraphKind::petersen;
  throw ConfigError("unknown graph kind '" + name + "' (random_regular | cycle | complete | petersen)");
}

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::random_regular: return "random_regular";
    case GraphKind::cycle: return "cycle";
    case GraphKind::complete: return "complete";
    case GraphKind::petersen: return "petersen";
  }
  return "?";
}

namespace {

std::optional<Graph> try_pairing(int n, int degree, std::mt19937_64& rng) {
  std::vector<Vertex> stubs;
  stubs.reserve(static_cast<std::size_t>(n * degree));
  for (Vertex v = 0; v < n; ++v)
    for (int k = 0; k < degree; ++k) stubs.push_back(v);
  shuffle(stubs, rng);
  std::vector<UndirectedEdge> edges;
  edges.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i < stubs.size(); i += 2) {
    Vertex a = stubs[i], b = stubs[i + 1];
    if (a == b) return std::nullopt;
    if (a > b) std::swap(a, b);
    edges.push_back({a, b});
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) return std::nullopt;
  Graph g(n, degree, std::move(edges));
  if (!g.connected()) return std::nullopt;
  return g;
}

}  // namespace

Graph generate_graph(GraphKind kind, int n, int degree, std::uint64_t seed) {
  switch (kind) {
    case GraphKind::cycle: {
      if (degree != 2) throw ConfigError("cycle graphs have degree 2");
      if (n < 3) throw ConfigError("cycle needs n >= 3");
      std::vector<UndirectedEdge> edges;
      for (Vertex v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n});
      return Graph(n, 2, std::move(edges));
    }
    case GraphKind::complete: {
      if (n < 3 || degree != n - 1) throw ConfigError("complete graph needs n >= 3 and degree = n - 1");
      std::vector<UndirectedEdge> edges;
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
      return Graph(n, degree, std::move(edges));
    }
    case GraphKind::petersen: {
      if (n != 10 || degree != 3) throw ConfigError("the Petersen graph has n = 10 and degree = 3");
      std::vector<UndirectedEdge> edges;
      for (Vertex i = 0; i < 5; ++i) {
        edges.push_back({i, (i + 1) % 5});
        edges.push_back({i, i + 5});
        edges.push_back({5 + i, 5 + (i + 2) % 5});
      }
      return Graph(10, 3, std::move(edges));
    }
    case GraphKind::random_regular: {
      if (degree < 1 || n <= degree || (static_cast<long long>(n) * degree) % 2 != 0)
        throw ConfigError("random_regular needs n > degree >= 1 and n * degree even (n = " + std::to_string(n) +
                          ", degree = " + std::to_string(degree) + ")");
      std::mt19937_64 rng(mix_seed(seed));
      const long long attempts = 10LL * n;
      for (long long a = 0; a < attempts; ++a)
        if (auto g = try_pairing(n, degree, rng)) return std::move(*g);
      throw NumericalError("random_regular(n = " + std::to_string(n) + ", degree = " + std::to_string(degree) +
                           "): no simple connected pairing after " + std::to_string(attempts) + " attempts");
    }
  }
  throw ConfigError("unknown graph kind");
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.n_vertices() << ' ' << g.degree() << '\n';
  for (const auto& e : g.edges()) out << e.origin << ' ' << e.terminus << '\n';
  return out.str();
}

void save_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << to_edge_list(g);
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  int n = 0, degree = 0;
  if (!(in >> n >> degree)) throw ConfigError(path.string() + ": missing 'n degree' header");
  std::vector<UndirectedEdge> edges;
  Vertex u, v;
  while (in >> u >> v) edges.push_back({u, v});
  if (!in.eof()) throw ConfigError(path.string() + ": malformed edge line");
  return Graph(n, degree, std::move(edges));
}

InjectivityProfile injectivity_profile(const Graph& g, int r_max) {
  const int n = g.n_vertices();
  InjectivityProfile out;
  out.radius.assign(static_cast<std::size_t>(n), r_max);
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> touched;
  for (Vertex x = 0; x < n; ++x) {
    // The first non-tree edge between vertices at distances (a, b) closes a
    // cycle inside every ball of radius >= max(a, b).
    int closing = r_max + 1;
    std::queue<Vertex> frontier;
    dist[static_cast<std::size_t>(x)] = 0;
    touched.assign(1, x);
    frontier.push(x);
    while (!frontier.empty()) {
      const Vertex v = frontier.front();
      frontier.pop();
      const int dv = dist[static_cast<std::size_t>(v)];
      if (dv >= closing) break;
      for (Vertex u : g.neighbors(v)) {
        int& du = dist[static_cast<std::size_t>(u)];
        if (du < 0) {
          if (dv + 1 > r_max) continue;
          du = dv + 1;
          parent[static_cast<std::size_t>(u)] = v;
          touched.push_back(u);
          frontier.push(u);
        } else if (u != parent[static_cast<std::size_t>(v)] && v != parent[static_cast<std::size_t>(u)]) {
          closing = std::min(closing, std::max(dv, du));
        }
      }
    }
    out.radius[static_cast<std::size_t>(x)] = std::min(r_max, closing - 1);
    for (Vertex t : touched) {
      dist[static_cast<std::size_t>(t)] = -1;
      parent[static_cast<std::size_t>(t)] = -1;
    }
  }
  out.fraction.assign(static_cast<std::size_t>(std::max(r_max, 0)), 0.0);
  for (int r = 1; r <= r_max; ++r) {
    const auto below = std::count_if(out.radius.begin(), out.radius.end(), [r](int rho) { return rho < r; });
    out.fraction[static_cast<std::size_t>(r - 1)] = static_cast<double>(below) / n;
  }
  return out;
}

std::vector<std::complex<double>> nb_apply(const Graph& g, std::span<const std::complex<double>> f) {
  if (static_cast<int>(f.size()) != g.n_directed())
    throw std::invalid_argument("nb_apply: vector length must equal the number of directed edges");
  std::vector<std::complex<double>> out(f.size());
  for (DirectedId b = 0; b < g.n_directed(); ++b) {
    std::complex<double> acc{};
    for (DirectedId next : g.outgoing(g.terminus(b)))
      if (next != Graph::reverse(b)) acc += f[static_cast<std::size_t>(next)];
    out[static_cast<std::size_t>(b)] = acc;
  }
  return out;
}

std::vector<std::complex<double>> nb_apply_adjoint(const Graph& g, std::span<const std::complex<double>> f) {
  if (static_cast<int>(f.size()) != g.n_directed())
    throw std::invalid_argument("nb_apply_adjoint: vector length must equal the number of directed edges");
  // B* = iota B iota with iota the edge reversal.
  std::vector<std::complex<double>> flipped(f.size());
  for (DirectedId b = 0; b < g.n_directed(); ++b)
    flipped[static_cast<std::size_t>(b)] = f[static_cast<std::size_t>(Graph::reverse(b))];
  auto applied = nb_apply(g, flipped);
  for (DirectedId b = 0; b < g.n_directed(); ++b)
    flipped[static_cast<std::size_t>(b)] = applied[static_cast<std::size_t>(Graph::reverse(b))];
  return flipped;
}

}  // namespace qglab
