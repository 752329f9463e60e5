#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qglab/graph.hpp"
#include "qglab/paths.hpp"

namespace qglab {

// One value in [-1, 1] per undirected edge.
struct EdgeConstant {
  std::vector<double> values;
};

// grid_n + 1 samples per undirected edge in canonical orientation, |f| <= 1.
struct EdgeFunction {
  int grid_n = 0;
  std::vector<double> samples;

  std::span<const double> edge(EdgeId e) const {
    const auto w = static_cast<std::size_t>(grid_n + 1);
    return {samples.data() + static_cast<std::size_t>(e) * w, w};
  }
};

// Kernel K_p(x, y) per non-backtracking k-path p, x on the first bond
// measured from x_0, y on the last bond measured from x_{k-1}.
// (grid_n + 1)^2 row-major samples per path, |K| <= 1.
struct PathKernel {
  int k = 0;
  int grid_n = 0;
  std::shared_ptr<const PathSet> paths;
  std::vector<double> table;

  std::size_t stride() const { return static_cast<std::size_t>(grid_n + 1) * static_cast<std::size_t>(grid_n + 1); }
  std::span<const double> kernel(std::size_t p) const { return {table.data() + p * stride(), stride()}; }
};

using Observable = std::variant<EdgeConstant, EdgeFunction, PathKernel>;

inline constexpr int kMaxKernelOrder = 4;
inline constexpr std::size_t kKernelMemoryLimit = std::size_t{512} << 20;  // bytes

std::string kind_name(const Observable& obs);
// Dimensions against g and the bounds |value| <= 1; throws std::invalid_argument.
void validate_observable(const Observable& obs, const Graph& g);
// Throws std::invalid_argument when a kernel of this shape exceeds the order cap or memory guard.
void check_kernel_budget(const Graph& g, int k, int grid_n);

PathKernel make_path_kernel(const Graph& g, int k, int grid_n);

enum class ObservableFamily {
  edge_constant_pm1,       // independent random signs per edge
  edge_function_sign_sin,  // random sign per edge times sin(2 pi x / L)
  path_kernel_pm1,         // random sign per unordered path, constant in (x, y)
  constant_one,            // f = 1 on every edge
};
ObservableFamily parse_observable_family(const std::string& name);
std::string to_string(ObservableFamily family);

// Deterministic in the seed. order is used by path kernels only.
Observable generate_observable(ObservableFamily family, const Graph& g, int grid_n, int order, std::uint64_t seed);

// "edge_id,value" with one row per undirected edge.
EdgeConstant load_edge_constant(const std::filesystem::path& path, const Graph& g);
// "edge,x,f" with grid_n + 1 consecutive rows per edge, edges in order.
EdgeFunction load_edge_function(const std::filesystem::path& path, const Graph& g, int grid_n);

}  // namespace qglab
