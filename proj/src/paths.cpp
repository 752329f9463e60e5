#include "qglab/paths.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace qglab {

std::size_t PathSet::expected_count(const Graph& g, int k) {
  std::size_t count = static_cast<std::size_t>(g.n_directed());
  for (int i = 1; i < k; ++i) count *= static_cast<std::size_t>(g.q());
  return count;
}

PathSet::PathSet(const Graph& g, int k) : k_(k) {
  if (k < 1) throw std::invalid_argument("PathSet: order k must be >= 1");
  const std::size_t count = expected_count(g, k);
  const auto width = static_cast<std::size_t>(k + 1);
  vertices_.reserve(count * width);
  bonds_.reserve(2 * count);

  std::vector<Vertex> stack_path(width);
  std::vector<DirectedId> stack_bond(static_cast<std::size_t>(k));
  auto extend = [&](auto&& self, int depth) -> void {
    if (depth == k) {
      vertices_.insert(vertices_.end(), stack_path.begin(), stack_path.end());
      bonds_.push_back(stack_bond.front());
      bonds_.push_back(stack_bond.back());
      return;
    }
    const DirectedId prev = stack_bond[static_cast<std::size_t>(depth - 1)];
    for (DirectedId next : g.outgoing(g.terminus(prev))) {
      if (next == Graph::reverse(prev)) continue;
      stack_bond[static_cast<std::size_t>(depth)] = next;
      stack_path[static_cast<std::size_t>(depth + 1)] = g.terminus(next);
      self(self, depth + 1);
    }
  };
  for (DirectedId b = 0; b < g.n_directed(); ++b) {
    stack_bond[0] = b;
    stack_path[0] = g.origin(b);
    stack_path[1] = g.terminus(b);
    extend(extend, 1);
  }

  // Reversal pairing through a hash of the vertex sequence.
  const std::size_t n = size();
  reversal_.assign(n, n);
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
  auto key = [&](std::span<const Vertex> p, bool backwards) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t j = 0; j < p.size(); ++j) {
      const Vertex v = backwards ? p[p.size() - 1 - j] : p[j];
      h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ull;
    }
    return h;
  };
  for (std::size_t i = 0; i < n; ++i) buckets[key(path(i), false)].push_back(i);
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = path(i);
    for (std::size_t j : buckets[key(p, true)]) {
      const auto r = path(j);
      if (std::equal(p.begin(), p.end(), r.rbegin())) {
        reversal_[i] = j;
        break;
      }
    }
  }
}

}  // namespace qglab
