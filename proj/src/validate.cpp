#include "qglab/validate.hpp"

#include <algorithm>
#include <cmath>

#include "qglab/ergodicity.hpp"
#include "qglab/errors.hpp"
#include "qglab/quantum_graph.hpp"
#include "qglab/spectrum.hpp"
#include "qglab/sweep.hpp"

namespace qglab {

namespace {

constexpr int kSamples = 20;
constexpr int kMaxDistance = 6;

// Band energies clear of Dirichlet points.
std::vector<EnergyData> band_energies(const TreeModel& model, const Band& band) {
  std::vector<EnergyData> out;
  for (int i = 0; i < kSamples; ++i) {
    const double lambda = band.lo + (i + 0.5) / kSamples * band.width();
    try {
      out.push_back(energy_data(model, lambda));
    } catch (const NumericalError&) {
    }
  }
  return out;
}

struct Worst {
  double value = 0.0;
  void operator()(double r) { value = std::max(value, std::isnan(r) ? INFINITY : r); }
};

}  // namespace

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.pass(); });
}

CsvWriter ValidationReport::csv() const {
  CsvWriter csv({"check", "measured", "tolerance", "pass"});
  for (const auto& c : checks)
    csv.row({c.name, format_real(c.measured), format_real(c.tolerance), c.pass() ? "true" : "false"});
  return csv;
}

ValidationReport run_validation(const ExperimentConfig& cfg, Execution exec) {
  const TreeModel model = cfg.model();
  ValidationReport report;
  auto add = [&](std::string name, double measured, double tol) {
    report.checks.push_back({std::move(name), measured, tol});
  };

  // Edge ODE identities, always integrated numerically.
  {
    const double tol = tol_ode(model.grid_n);
    const double lo = std::max(cfg.range_lo, 0.1), hi = std::max(cfg.range_hi, lo + 1.0);
    Worst wr, sym, refl;
    for (int i = 0; i < kSamples; ++i) {
      const double lambda = lo + (hi - lo) * i / (kSamples - 1);
      const auto r = edge_identities(edge_basis(model.potential, lambda, model.grid_n, {.force_rk4 = true}));
      wr(r.wronskian);
      sym(r.symmetry);
      refl(r.reflection);
    }
    add("edge_wronskian", wr.value, tol);
    add("edge_symmetry", sym.value, tol);
    add("edge_reflection", refl.value, tol);
  }

  const Band band = select_band(model, cfg.range_lo, cfg.range_hi, cfg.band_index, cfg.scan_n);
  const auto energies = band_energies(model, band);

  // Tree Green function against the adjacency resolvent by fixed-point iteration.
  {
    Worst g;
    for (int i = 0; i < kSamples; ++i) {
      const std::complex<double> gamma(band.lo + (i + 0.5) / kSamples * band.width(), 0.5 + 0.25 * (i % 5));
      const auto e = edge_endpoint(model.potential, gamma, model.grid_n);
      const auto w = static_cast<double>(model.q + 1) * e.c + model.alpha * e.s;
      for (int d = 0; d <= kMaxDistance; ++d)
        g(std::abs(green_tree_discrete(model, gamma, d) + e.s * green_adjacency_fixed_point(model.q, w, d)));
    }
    add("green_tree_vs_adjacency", g.value, 1e-10);
  }
  {
    Worst r;
    for (const auto& e : energies) {
      const double im0 = green_tree_boundary(model, e.lambda, 0).imag();
      for (int d = 1; d <= kMaxDistance; ++d)
        r(std::abs(green_tree_boundary(model, e.lambda, d).imag() / im0 - spherical(model.q, e.w, d)));
    }
    add("spherical_ratio", r.value, 1e-10);
  }

  // Limit densities.
  {
    Worst integral, diagonal, routes;
    const double L = model.length;
    for (const auto& e : energies) {
      integral(std::abs(simpson(psi_density_grid(e), e.basis.step()) - 2.0 / (model.q + 1)));
      for (double x : {0.0, 0.25 * L, 0.5 * L, 0.75 * L})
        diagonal(std::abs(2.0 * psi_correlator(e, 1, x, x) - psi_density(e, x)));
      for (int k = 1; k <= 3; ++k) {
        const double a = psi_correlator(e, k, 0.25 * L, 0.75 * L), b = psi_correlator_green(e, k, 0.25 * L, 0.75 * L);
        routes(std::abs(a - b) / (1.0 + std::abs(a)));
      }
    }
    add("density_integral", integral.value, 1e-8);
    add("correlator_diagonal", diagonal.value, 1e-10);
    add("correlator_routes", routes.value, 1e-8);
  }

  // Band correspondence on the first configured graph.
  {
    const Graph g = generate_graph(cfg.kind, cfg.sizes.front(), cfg.degree, cfg.seed);
    const auto spec = adjacency_spectrum(g, true, exec);
    const auto pairs = band_spectrum(g, model, band, spec, exec);
    Worst eig, norm, cont, cur, nb, unit_ex;
    const Observable one = generate_observable(ObservableFamily::constant_one, g, model.grid_n, 1, 0);
    for (const auto& p : pairs) {
      const EnergyData e = energy_data(model, p.lambda);
      double r2 = 0.0;
      for (int i = 0; i < g.n_vertices(); ++i) {
        double acc = -e.w * p.psi_ring[static_cast<std::size_t>(i)];
        for (Vertex j : g.neighbors(i)) acc += p.psi_ring[static_cast<std::size_t>(j)];
        r2 += acc * acc;
      }
      eig(std::sqrt(r2));
      norm(std::abs(metric_norm_squared(g, e, p) - 1.0));
      const auto k = kirchhoff_residual(g, p, model);
      cont(k.continuity_max);
      cur(k.current_max);
      const auto lift = nb_lift(g, model, p);
      nb(std::max(lift.residual, lift.residual_star));
      unit_ex(std::abs(expectation_edge(g, e, p, one) - 1.0));
    }
    add("eigen_residual", eig.value, 1e-8);
    add("metric_norm", norm.value, 1e-5);
    add("kirchhoff_continuity", cont.value, 1e-10);
    add("kirchhoff_current", cur.value, 1e-7);
    add("nb_lift", nb.value, 1e-10);
    add("unit_expectation", unit_ex.value, 1e-10);
    const auto rep = quantum_variance(g, model, band, pairs, one, exec);
    add("unit_variance", pairs.empty() ? 0.0 : rep.variance, 1e-10);
  }
  return report;
}

}  // namespace qglab
