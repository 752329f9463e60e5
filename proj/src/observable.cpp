#include "qglab/observable.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qglab/csv.hpp"
#include "qglab/errors.hpp"
#include "qglab/rng.hpp"

namespace qglab {

namespace {

void check_bound(std::span<const double> v, const char* what) {
  for (double x : v)
    if (!(std::abs(x) <= 1.0)) throw std::invalid_argument(std::string(what) + ": values must satisfy |value| <= 1");
}

}  // namespace

std::string kind_name(const Observable& obs) {
  switch (obs.index()) {
    case 0: return "edge_constant";
    case 1: return "edge_function";
    default: return "path_kernel";
  }
}

void check_kernel_budget(const Graph& g, int k, int grid_n) {
  if (k < 1 || k > kMaxKernelOrder)
    throw std::invalid_argument("path kernel order must be in [1, " + std::to_string(kMaxKernelOrder) + "]");
  const double bytes = static_cast<double>(PathSet::expected_count(g, k)) * (grid_n + 1.0) * (grid_n + 1.0) * 8.0;
  if (bytes > static_cast<double>(kKernelMemoryLimit))
    throw std::invalid_argument("path kernel table would need " + std::to_string(bytes / (1 << 20)) +
                                " MiB, above the limit; lower k or grid_n");
}

void validate_observable(const Observable& obs, const Graph& g) {
  const auto ne = static_cast<std::size_t>(g.n_edges());
  if (const auto* c = std::get_if<EdgeConstant>(&obs)) {
    if (c->values.size() != ne) throw std::invalid_argument("edge constant: one value per edge required");
    check_bound(c->values, "edge constant");
  } else if (const auto* f = std::get_if<EdgeFunction>(&obs)) {
    if (f->grid_n < 2 || f->grid_n % 2) throw std::invalid_argument("edge function: grid_n must be even and >= 2");
    if (f->samples.size() != ne * static_cast<std::size_t>(f->grid_n + 1))
      throw std::invalid_argument("edge function: sample count does not match the graph");
    check_bound(f->samples, "edge function");
  } else {
    const auto& p = std::get<PathKernel>(obs);
    check_kernel_budget(g, p.k, p.grid_n);
    if (p.grid_n < 2 || p.grid_n % 2) throw std::invalid_argument("path kernel: grid_n must be even and >= 2");
    if (!p.paths || p.paths->order() != p.k || p.paths->size() != PathSet::expected_count(g, p.k))
      throw std::invalid_argument("path kernel: path enumeration does not match the graph and order");
    if (p.table.size() != p.paths->size() * p.stride())
      throw std::invalid_argument("path kernel: table size does not match the path count");
    check_bound(p.table, "path kernel");
  }
}

PathKernel make_path_kernel(const Graph& g, int k, int grid_n) {
  check_kernel_budget(g, k, grid_n);
  PathKernel p;
  p.k = k;
  p.grid_n = grid_n;
  p.paths = std::make_shared<const PathSet>(g, k);
  p.table.assign(p.paths->size() * p.stride(), 0.0);
  return p;
}

ObservableFamily parse_observable_family(const std::string& name) {
  if (name == "edge_constant_pm1") return ObservableFamily::edge_constant_pm1;
  if (name == "edge_function_sign_sin") return ObservableFamily::edge_function_sign_sin;
  if (name == "path_kernel_pm1") return ObservableFamily::path_kernel_pm1;
  if (name == "constant_one") return ObservableFamily::constant_one;
  throw ConfigError("unknown observable kind '" + name +
                    "' (edge_constant_pm1 | edge_function_sign_sin | path_kernel_pm1 | constant_one)");
}

std::string to_string(ObservableFamily family) {
  switch (family) {
    case ObservableFamily::edge_constant_pm1: return "edge_constant_pm1";
    case ObservableFamily::edge_function_sign_sin: return "edge_function_sign_sin";
    case ObservableFamily::path_kernel_pm1: return "path_kernel_pm1";
    case ObservableFamily::constant_one: return "constant_one";
  }
  return "?";
}

Observable generate_observable(ObservableFamily family, const Graph& g, int grid_n, int order, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto ne = static_cast<std::size_t>(g.n_edges());
  switch (family) {
    case ObservableFamily::edge_constant_pm1: {
      EdgeConstant c;
      c.values.resize(ne);
      for (double& v : c.values) v = random_sign(rng);
      return c;
    }
    case ObservableFamily::edge_function_sign_sin: {
      EdgeFunction f;
      f.grid_n = grid_n;
      f.samples.resize(ne * static_cast<std::size_t>(grid_n + 1));
      std::vector<double> shape(static_cast<std::size_t>(grid_n + 1));
      for (int i = 0; i <= grid_n; ++i) shape[static_cast<std::size_t>(i)] = std::sin(2.0 * std::numbers::pi * i / grid_n);
      for (std::size_t e = 0; e < ne; ++e) {
        const double sign = random_sign(rng);
        for (std::size_t i = 0; i < shape.size(); ++i) f.samples[e * shape.size() + i] = sign * shape[i];
      }
      return f;
    }
    case ObservableFamily::path_kernel_pm1: {
      PathKernel p = make_path_kernel(g, order, grid_n);
      const std::size_t n = p.paths->size(), stride = p.stride();
      std::vector<double> sign(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = p.paths->reversed(i);
        sign[i] = r < i ? sign[r] : random_sign(rng);
        std::fill_n(p.table.begin() + static_cast<std::ptrdiff_t>(i * stride), stride, sign[i]);
      }
      return p;
    }
    case ObservableFamily::constant_one: {
      EdgeFunction f;
      f.grid_n = grid_n;
      f.samples.assign(ne * static_cast<std::size_t>(grid_n + 1), 1.0);
      return f;
    }
  }
  throw std::invalid_argument("generate_observable: unknown family");
}

EdgeConstant load_edge_constant(const std::filesystem::path& path, const Graph& g) {
  const auto table = read_csv(path);
  if (table.header != std::vector<std::string>{"edge_id", "value"})
    throw ConfigError(path.string() + ": expected header 'edge_id,value'");
  EdgeConstant c;
  c.values.assign(static_cast<std::size_t>(g.n_edges()), NAN);
  for (const auto& row : table.rows) {
    if (row.size() != 2) throw ConfigError(path.string() + ": rows need 2 columns");
    const long long e = parse_integer(row[0]);
    if (e < 0 || e >= g.n_edges()) throw ConfigError(path.string() + ": edge_id out of range");
    c.values[static_cast<std::size_t>(e)] = parse_real(row[1]);
  }
  for (double v : c.values)
    if (std::isnan(v)) throw ConfigError(path.string() + ": every edge needs a value");
  try {
    validate_observable(c, g);
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(path.string() + ": " + ex.what());
  }
  return c;
}

EdgeFunction load_edge_function(const std::filesystem::path& path, const Graph& g, int grid_n) {
  const auto table = read_csv(path);
  if (table.header != std::vector<std::string>{"edge", "x", "f"})
    throw ConfigError(path.string() + ": expected header 'edge,x,f'");
  const auto w = static_cast<std::size_t>(grid_n + 1);
  if (table.rows.size() != w * static_cast<std::size_t>(g.n_edges()))
    throw ConfigError(path.string() + ": expected grid_n + 1 rows per edge");
  EdgeFunction f;
  f.grid_n = grid_n;
  f.samples.resize(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != 3) throw ConfigError(path.string() + ": rows need 3 columns");
    if (parse_integer(row[0]) != static_cast<long long>(r / w))
      throw ConfigError(path.string() + ": sample blocks must be grouped by edge in order");
    f.samples[r] = parse_real(row[2]);
  }
  try {
    validate_observable(f, g);
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(path.string() + ": " + ex.what());
  }
  return f;
}

}  // namespace qglab
