#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qglab/graph.hpp"
#include "qglab/observable.hpp"
#include "qglab/sweep.hpp"
#include "qglab/tree.hpp"

namespace qglab {

// Flat "section.key = value" lines; '#' starts a comment.
std::map<std::string, std::string> parse_key_values(const std::string& text, const std::string& origin = "config");

struct ExperimentConfig {
  // model
  int q = 2;
  double length = 1.0;
  double alpha = 0.0;
  std::string potential = "zero";  // zero | cosine:<amplitude> | file:<path>
  // graph
  GraphKind kind = GraphKind::random_regular;
  std::vector<int> sizes{100};
  int degree = 3;
  std::uint64_t seed = 1;
  // band selection
  int band_index = 1;
  double range_lo = 0.0, range_hi = 45.0;
  std::optional<std::pair<double, double>> window;  // optional lambda window inside the band
  // observable
  std::string observable = "edge_constant_pm1";  // a family name or "file"
  int order = 2;
  std::string observable_file;
  // run
  int trials = 10;
  int grid_n = 256;
  int kernel_grid_n = 32;
  int threads = 0;  // 0 keeps the OpenMP default
  int scan_n = 0;   // 0 picks a width-based default
  bool dump_eigenfunctions = false;

  std::filesystem::path base_dir = ".";  // relative file paths resolve here

  // Field-level checks; throws ConfigError.
  void validate() const;
  TreeModel model() const;
  SweepConfig sweep() const;
  std::filesystem::path resolve(const std::string& path) const;
};

ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = ".");
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace qglab
