#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qglab/graph.hpp"

namespace qglab {

// All non-backtracking paths (x_0, ..., x_k) of k >= 1 bonds, both
// orientations. Ordered by the directed id of the first bond, then
// depth-first over outgoing bonds. There are N (q+1) q^(k-1) of them.
class PathSet {
 public:
  PathSet() = default;
  PathSet(const Graph& g, int k);

  int order() const { return k_; }
  std::size_t size() const { return k_ > 0 ? vertices_.size() / static_cast<std::size_t>(k_ + 1) : 0; }
  std::span<const Vertex> path(std::size_t i) const {
    return {vertices_.data() + i * static_cast<std::size_t>(k_ + 1), static_cast<std::size_t>(k_ + 1)};
  }
  // Directed id of the first and last bond.
  DirectedId first_bond(std::size_t i) const { return bonds_[2 * i]; }
  DirectedId last_bond(std::size_t i) const { return bonds_[2 * i + 1]; }
  // Index of the reversed path.
  std::size_t reversed(std::size_t i) const { return reversal_[i]; }

  static std::size_t expected_count(const Graph& g, int k);

 private:
  int k_ = 0;
  std::vector<Vertex> vertices_;
  std::vector<DirectedId> bonds_;
  std::vector<std::size_t> reversal_;
};

}  // namespace qglab
