#include "qglab/commands.hpp"

#include <cmath>
#include <iomanip>

#include "qglab/errors.hpp"
#include "qglab/quantum_graph.hpp"
#include "qglab/spectrum.hpp"
#include "qglab/sweep.hpp"
#include "qglab/validate.hpp"

namespace qglab {

namespace {

std::filesystem::path prepare(const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + out_dir.string() + ": " + ec.message());
  return out_dir;
}

}  // namespace

int cmd_bands(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log) {
  const TreeModel model = cfg.model();
  const auto bs = find_bands(model, cfg.range_lo, cfg.range_hi, cfg.scan_n);
  const auto dir = prepare(out_dir);
  bands_csv(bs).save(dir / "bands.csv");
  dirichlet_csv(bs).save(dir / "dirichlet.csv");
  density_csv(model, bs).save(dir / "density.csv");
  log << bs.bands.size() << " band(s) and " << bs.dirichlet.size() << " Dirichlet point(s) in [" << cfg.range_lo
      << ", " << cfg.range_hi << "]\n";
  for (const auto& b : bs.bands)
    log << "  band " << b.index << ": [" << format_real(b.lo) << ", " << format_real(b.hi) << "] "
        << to_string(b.direction) << '\n';
  return 0;
}

int cmd_spectrum(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log) {
  if (cfg.sizes.size() != 1) throw ConfigError("spectrum takes a single graph size in graph.sizes");
  const TreeModel model = cfg.model();
  const auto bs = find_bands(model, cfg.range_lo, cfg.range_hi, cfg.scan_n);
  const Graph g = generate_graph(cfg.kind, cfg.sizes.front(), cfg.degree, cfg.seed);
  const auto spec = adjacency_spectrum(g, true);
  const auto dir = prepare(out_dir);

  std::vector<Eigenpair> all;
  std::vector<KirchhoffResidual> residuals;
  for (const auto& band : bs.bands) {
    const auto pairs = band_spectrum(g, model, band, spec);
    const double predicted = g.n_vertices() * kesten_mckay_mass(model.q, band.w_min(), band.w_max());
    log << "band " << band.index << ": N_I = " << pairs.size() << ", Kesten-McKay prediction " << std::fixed
        << std::setprecision(1) << predicted << std::defaultfloat << std::setprecision(6) << '\n';
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      residuals.push_back(kirchhoff_residual(g, pairs[i], model));
      if (cfg.dump_eigenfunctions) {
        const auto e = energy_data(model, pairs[i].lambda);
        eigenfunction_csv(g, e, pairs[i])
            .save(dir / ("psi_band" + std::to_string(band.index) + "_" + std::to_string(i) + ".csv"));
      }
      all.push_back(pairs[i]);
    }
  }
  spectrum_csv(all, residuals).save(dir / "spectrum.csv");
  log << all.size() << " eigenpair(s) on " << to_string(cfg.kind) << " N = " << g.n_vertices() << '\n';
  return 0;
}

int cmd_sweep(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log) {
  const auto sc = cfg.sweep();
  if (sc.sizes.size() < 2) throw ConfigError("sweep needs at least two sizes in graph.sizes");
  const auto result = convergence_sweep(sc);
  const auto dir = prepare(out_dir);
  result.sweep_csv().save(dir / "sweep.csv");
  result.summary_csv().save(dir / "summary.csv");
  for (const auto& s : result.summary)
    log << "N = " << s.N << ": mean variance " << format_real(s.mean_variance) << " +- " << format_real(s.stderr_)
        << " over " << s.trials << " trial(s)\n";
  log << "decay ratio (largest / smallest N): " << format_real(result.decay_ratio()) << '\n';
  return 0;
}

int cmd_validate(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log) {
  const auto report = run_validation(cfg);
  const auto dir = prepare(out_dir);
  report.csv().save(dir / "validate.csv");
  int failures = 0;
  for (const auto& c : report.checks) {
    if (!c.pass()) {
      ++failures;
      log << "FAIL " << c.name << ": residual " << format_real(c.measured) << " > tolerance " << format_real(c.tolerance)
          << '\n';
    }
  }
  log << report.checks.size() - static_cast<std::size_t>(failures) << "/" << report.checks.size()
      << " identities pass\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace qglab
