#include "qglab/sweep.hpp"

#include <cmath>
#include <map>
#include <string>

#include "qglab/errors.hpp"
#include "qglab/rng.hpp"

namespace qglab {

void SweepConfig::validate() const {
  model.validate();
  if (sizes.empty()) throw ConfigError("graph.sizes must not be empty");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1]) throw ConfigError("graph.sizes must be strictly ascending");
  if (degree != model.q + 1)
    throw ConfigError("graph.degree = " + std::to_string(degree) + " must equal model.q + 1 = " +
                      std::to_string(model.q + 1));
  if (trials < 1) throw ConfigError("run.trials must be >= 1");
  if (band_index < 1) throw ConfigError("band.index must be >= 1");
  if (!(range_hi >= range_lo)) throw ConfigError("band.range must satisfy lo <= hi");
  if (kernel_grid_n < 2 || kernel_grid_n % 2) throw ConfigError("kernel grid must be even and >= 2");
  if (family == ObservableFamily::path_kernel_pm1 && (order < 1 || order > kMaxKernelOrder))
    throw ConfigError("observable.order must be in [1, " + std::to_string(kMaxKernelOrder) + "]");
}

Band select_band(const TreeModel& model, double lo, double hi, int band_index, int scan_n) {
  const auto bs = find_bands(model, lo, hi, scan_n);
  if (band_index < 1 || band_index > static_cast<int>(bs.bands.size()))
    throw ConfigError("band.index = " + std::to_string(band_index) + " but the range holds " +
                      std::to_string(bs.bands.size()) + " band(s)");
  return bs.bands[static_cast<std::size_t>(band_index - 1)];
}

Band restrict_band(const TreeModel& model, const Band& band, double lo, double hi) {
  Band out = band;
  if (lo > band.lo) {
    out.lo = lo;
    out.w_lo = w_of_lambda(model, lo);
  }
  if (hi < band.hi) {
    out.hi = hi;
    out.w_hi = w_of_lambda(model, hi);
  }
  if (!(out.hi > out.lo)) throw ConfigError("band.window does not intersect the selected band");
  return out;
}

std::vector<VarianceReport> run_trial(const SweepConfig& cfg, const Band& band, int n, int trial,
                                      const std::vector<ObservableFamily>& families, Execution exec) {
  try {
    const Graph g = generate_graph(cfg.kind, n, cfg.degree,
                                   derive_seed(cfg.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial)));
    const SpectralData spec = adjacency_spectrum(g, true, exec);
    std::vector<VarianceReport> out;
    std::vector<Eigenpair> pairs;
    int pairs_grid = -1;
    for (const auto family : families) {
      TreeModel model = cfg.model;
      if (family == ObservableFamily::path_kernel_pm1) model.grid_n = cfg.kernel_grid_n;
      if (model.grid_n != pairs_grid) {
        pairs = band_spectrum(g, model, band, spec, exec);
        pairs_grid = model.grid_n;
      }
      const auto obs = generate_observable(
          family, g, model.grid_n, cfg.order,
          derive_seed(cfg.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial),
                      1 + static_cast<std::uint64_t>(family)));
      out.push_back(quantum_variance(g, model, band, pairs, obs, exec));
    }
    return out;
  } catch (const ConfigError&) {
    throw;
  } catch (const NumericalError& e) {
    throw NumericalError("N = " + std::to_string(n) + ", trial " + std::to_string(trial) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("N = " + std::to_string(n) + ", trial " + std::to_string(trial) + ": " + e.what());
  }
}

std::vector<SummaryRow> summarize(const std::vector<SweepRow>& rows) {
  std::map<int, std::vector<double>> by_size;
  for (const auto& r : rows) {
    auto& v = by_size[r.N];
    if (r.N_I > 0) v.push_back(r.variance);
  }
  std::vector<SummaryRow> out;
  for (const auto& [n, v] : by_size) {
    SummaryRow s;
    s.N = n;
    s.trials = static_cast<int>(v.size());
    if (v.empty()) {
      s.mean_variance = s.stderr_ = NAN;
    } else {
      double sum = 0.0;
      for (double x : v) sum += x;
      s.mean_variance = sum / static_cast<double>(v.size());
      double ss = 0.0;
      for (double x : v) ss += (x - s.mean_variance) * (x - s.mean_variance);
      s.stderr_ = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size())) : 0.0;
    }
    out.push_back(s);
  }
  return out;
}

double SweepResult::decay_ratio() const {
  if (summary.size() < 2) return NAN;
  return summary.back().mean_variance / summary.front().mean_variance;
}

CsvWriter SweepResult::sweep_csv() const {
  CsvWriter csv({"N", "trial", "band", "N_I", "variance"});
  for (const auto& r : rows)
    csv.row({std::to_string(r.N), std::to_string(r.trial), std::to_string(r.band), std::to_string(r.N_I),
             format_real(r.variance)});
  return csv;
}

CsvWriter SweepResult::summary_csv() const {
  CsvWriter csv({"N", "mean_variance", "stderr", "trials"});
  for (const auto& s : summary)
    csv.row({std::to_string(s.N), format_real(s.mean_variance), format_real(s.stderr_), std::to_string(s.trials)});
  return csv;
}

SweepResult convergence_sweep(const SweepConfig& cfg, Execution exec) {
  cfg.validate();
  Band band = select_band(cfg.model, cfg.range_lo, cfg.range_hi, cfg.band_index, cfg.scan_n);
  if (cfg.window) band = restrict_band(cfg.model, band, cfg.window->first, cfg.window->second);
  const auto trials = static_cast<std::size_t>(cfg.trials);
  const std::size_t tasks = cfg.sizes.size() * trials;
  SweepResult result;
  result.rows.resize(tasks);
  parallel_for(
      exec, tasks,
      [&](std::size_t t) {
        const int n = cfg.sizes[t / trials];
        const int trial = static_cast<int>(t % trials);
        const auto report = run_trial(cfg, band, n, trial, {cfg.family}, exec).front();
        result.rows[t] = {n, trial, band.index, report.N_I, report.variance};
      },
      true);
  result.summary = summarize(result.rows);
  return result;
}

}  // namespace qglab
