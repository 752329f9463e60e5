#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace qglab {

using Vertex = int;
using EdgeId = int;      // undirected edge
using DirectedId = int;  // directed edge; 2e is o_e -> t_e, 2e+1 its reversal

struct UndirectedEdge {
  Vertex origin;
  Vertex terminus;
  auto operator<=>(const UndirectedEdge&) const = default;
};

// Simple connected regular graph. Undirected edges are canonical pairs
// (origin < terminus) sorted lexicographically; the origin sits at x = 0 of
// the metric edge [0, L].
class Graph {
 public:
  Graph(int n_vertices, int degree, std::vector<UndirectedEdge> edges);

  int n_vertices() const { return n_; }
  int degree() const { return degree_; }
  int q() const { return degree_ - 1; }
  int n_edges() const { return static_cast<int>(edges_.size()); }
  int n_directed() const { return 2 * n_edges(); }

  std::span<const Vertex> neighbors(Vertex v) const;
  const std::vector<UndirectedEdge>& edges() const { return edges_; }
  const UndirectedEdge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }

  static constexpr DirectedId reverse(DirectedId b) { return b ^ 1; }
  static constexpr EdgeId undirected(DirectedId b) { return b >> 1; }
  Vertex origin(DirectedId b) const;
  Vertex terminus(DirectedId b) const;
  // Directed edges leaving v, in neighbor order.
  std::span<const DirectedId> outgoing(Vertex v) const;
  // Directed edge u -> v, or -1 if not adjacent.
  DirectedId find_directed(Vertex u, Vertex v) const;

  bool connected() const;

 private:
  int n_;
  int degree_;
  std::vector<UndirectedEdge> edges_;
  std::vector<Vertex> adjacency_;     // n * degree, sorted per vertex
  std::vector<DirectedId> outgoing_;  // n * degree, aligned with adjacency_
};

enum class GraphKind { random_regular, cycle, complete, petersen };

GraphKind parse_graph_kind(const std::string& name);
std::string to_string(GraphKind kind);

// Configuration (pairing) model with rejection of loops, multi-edges and
// disconnected outcomes for random_regular; deterministic in the seed.
Graph generate_graph(GraphKind kind, int n, int degree, std::uint64_t seed);

// Text edge list: header "n degree", then one "u v" line per undirected edge.
std::string to_edge_list(const Graph& g);
void save_edge_list(const Graph& g, const std::filesystem::path& path);
Graph load_edge_list(const std::filesystem::path& path);

struct InjectivityProfile {
  std::vector<int> radius;        // per vertex, capped at r_max
  std::vector<double> fraction;   // fraction[r-1] = #{x : rho(x) < r} / N, r = 1..r_max
};

// rho(x) is the largest rho <= r_max for which the subgraph induced on the
// ball B(x, rho) is a tree.
InjectivityProfile injectivity_profile(const Graph& g, int r_max = 10);

// Non-backtracking operator on directed-edge functions and its adjoint.
std::vector<std::complex<double>> nb_apply(const Graph& g, std::span<const std::complex<double>> f);
std::vector<std::complex<double>> nb_apply_adjoint(const Graph& g, std::span<const std::complex<double>> f);

}  // namespace qglab
