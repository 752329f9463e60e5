#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qglab/csv.hpp"
#include "qglab/ergodicity.hpp"
#include "qglab/graph.hpp"
#include "qglab/observable.hpp"
#include "qglab/tree.hpp"

namespace qglab {

struct SweepConfig {
  GraphKind kind = GraphKind::random_regular;
  std::vector<int> sizes;  // ascending
  int degree = 3;
  TreeModel model;
  int band_index = 1;
  double range_lo = 0.0, range_hi = 45.0;  // search range for the band
  std::optional<std::pair<double, double>> window;  // optional lambda window inside the band
  ObservableFamily family = ObservableFamily::edge_constant_pm1;
  int order = 2;           // path kernel order
  int kernel_grid_n = 32;  // path kernels use this grid instead of model.grid_n
  int trials = 10;
  std::uint64_t seed = 1;
  int scan_n = 0;

  void validate() const;
};

// Band band_index of find_bands(model, lo, hi); ConfigError if absent.
Band select_band(const TreeModel& model, double lo, double hi, int band_index, int scan_n = 0);
// Intersection of a band with [lo, hi]; ConfigError if empty.
Band restrict_band(const TreeModel& model, const Band& band, double lo, double hi);

// One (N, trial) draw: graph seeded by (seed, N, trial), one observable per
// family seeded by (seed, N, trial, family). Reports follow the order of families.
std::vector<VarianceReport> run_trial(const SweepConfig& cfg, const Band& band, int n, int trial,
                                      const std::vector<ObservableFamily>& families,
                                      Execution exec = Execution::parallel);

struct SweepRow {
  int N = 0;
  int trial = 0;
  int band = 0;
  int N_I = 0;
  double variance = 0.0;
};

struct SummaryRow {
  int N = 0;
  double mean_variance = 0.0;  // over trials with N_I > 0
  double stderr_ = 0.0;
  int trials = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SummaryRow> summary;

  // Mean variance at the largest size over that at the smallest.
  double decay_ratio() const;
  CsvWriter sweep_csv() const;
  CsvWriter summary_csv() const;
};

std::vector<SummaryRow> summarize(const std::vector<SweepRow>& rows);

// Parallel over (size, trial); results do not depend on the schedule.
SweepResult convergence_sweep(const SweepConfig& cfg, Execution exec = Execution::parallel);

}  // namespace qglab
