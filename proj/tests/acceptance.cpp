// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "oracles.hpp"
#include "qglab/commands.hpp"
#include "qglab/ergodicity.hpp"
#include "qglab/sweep.hpp"

using namespace qglab;
namespace fs = std::filesystem;
using cplx = std::complex<double>;
using Gauss = boost::math::quadrature::gauss<double, 40>;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

TreeModel make_model(int q, double amp, double alpha, int grid_n) {
  TreeModel m;
  m.q = q;
  m.alpha = alpha;
  m.potential = amp == 0.0 ? Potential::zero(1.0) : Potential::cosine(1.0, amp);
  m.grid_n = grid_n;
  return m;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// ---------------------------------------------------------------- 1
Verdict edge_identity_suite() {
  double worst_w = 0.0, worst_c = 0.0, worst_r = 0.0;
  for (double amp : {0.0, 1.0}) {
    const Potential u = amp == 0.0 ? Potential::zero(1.0) : Potential::cosine(1.0, amp);
    for (int i = 0; i < 100; ++i) {
      const double lambda = 0.1 + (50.0 - 0.1) * i / 99.0;
      const EdgeBasis b = edge_basis(u, lambda, 1024, {.force_rk4 = true});
      worst_w = std::max(worst_w, std::abs(b.c * b.s_prime - b.s * b.c_prime - 1.0));
      worst_c = std::max(worst_c, std::abs(b.c - b.s_prime));
      const auto n = static_cast<std::size_t>(b.grid_n);
      for (std::size_t j = 0; j <= n; ++j)
        worst_r = std::max(worst_r, std::abs(b.s * b.C[j] - b.c * b.S[j] - b.S[n - j]));
    }
  }
  const double tol = 1e-8;
  return {worst_w <= tol && worst_c <= tol && worst_r <= tol,
          "wronskian " + fmt(worst_w) + ", c - s' " + fmt(worst_c) + ", reflection " + fmt(worst_r)};
}

// ---------------------------------------------------------------- 2
Verdict band_structure() {
  const auto m = make_model(2, 0.0, 0.0, 1024);
  const auto bs = find_bands(m, 0.0, 45.0);
  const double theta = std::acos(2.0 * std::sqrt(2.0) / 3.0);
  const double pi = std::numbers::pi;
  const Band& b1 = bs.bands.at(0);
  double worst = std::max(std::abs(b1.lo - theta * theta), std::abs(b1.hi - (pi - theta) * (pi - theta)));
  double worst_d = 0.0;
  bool count_ok = bs.dirichlet.size() == 2;
  for (std::size_t n = 1; n <= bs.dirichlet.size(); ++n)
    worst_d = std::max(worst_d, std::abs(bs.dirichlet[n - 1] - n * n * pi * pi));
  for (int n = 1; n <= 3; ++n) worst_d = std::max(worst_d, std::abs(dirichlet_eigenvalue(m, n) - n * n * pi * pi));
  return {count_ok && worst <= 1e-9 && worst_d <= 1e-9,
          "band-1 endpoints " + fmt(worst) + ", Dirichlet roots " + fmt(worst_d)};
}

// ---------------------------------------------------------------- 3
// Resolvent of the tree adjacency at distances 0..d_max by the truncated
// branch continued fraction zeta = -1 / (z + q zeta), deepened until it settles.
std::vector<cplx> continued_fraction_green(int q, cplx z, int d_max) {
  auto evaluate = [&](int depth) {
    cplx zeta = 0.0;
    for (int i = 0; i < depth; ++i) zeta = -1.0 / (z + static_cast<double>(q) * zeta);
    return zeta;
  };
  int depth = 64;
  cplx zeta = evaluate(depth), next = evaluate(2 * depth);
  while (std::abs(next - zeta) > 1e-14 * std::abs(next) && depth < (1 << 22)) {
    depth *= 2;
    zeta = next;
    next = evaluate(2 * depth);
  }
  std::vector<cplx> out{-1.0 / (z + static_cast<double>(q + 1) * next)};
  for (int d = 1; d <= d_max; ++d) out.push_back(-next * out.back());
  return out;
}

// Chebyshev form of the spherical function, |m| < 2 sqrt(q).
double spherical_closed(int q, double m, int d) {
  const double theta = std::acos(m / (2.0 * std::sqrt(q)));
  const double qq = q;
  return std::pow(qq, -0.5 * d) *
         (2.0 / (qq + 1) * std::cos(d * theta) + (qq - 1) / (qq + 1) * std::sin((d + 1) * theta) / std::sin(theta));
}

Verdict green_identities() {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const cplx gamma(oracle::uniform(rng, 0.1, 50.0), oracle::uniform(rng, 0.05, 2.0));
    // Free edge in closed form.
    {
      const auto m = make_model(2, 0.0, 0.0, 256);
      const cplx k = std::sqrt(gamma);
      const cplx s = std::sin(k) / k, w = 3.0 * std::cos(k);
      const auto cf = continued_fraction_green(2, w, 6);
      for (int d = 0; d <= 6; ++d)
        worst = std::max(worst, std::abs(green_tree_discrete(m, gamma, d) + s * cf[static_cast<std::size_t>(d)]));
    }
    // Cosine potential with coupling; endpoint data from the integrator.
    {
      const auto m = make_model(2, 1.0, 0.5, 1024);
      const auto e = edge_endpoint(m.potential, gamma, m.grid_n);
      const cplx w = 3.0 * e.c + 0.5 * e.s;
      const auto cf = continued_fraction_green(2, w, 6);
      for (int d = 0; d <= 6; ++d)
        worst = std::max(worst, std::abs(green_tree_discrete(m, gamma, d) + e.s * cf[static_cast<std::size_t>(d)]));
    }
  }
  double worst_ratio = 0.0;
  for (const auto& m : {make_model(2, 0.0, 0.0, 256), make_model(2, 1.0, 0.5, 256)}) {
    const Band band = select_band(m, 0.0, 45.0, 1);
    for (int i = 1; i < 20; ++i) {
      const double lambda = band.lo + i / 20.0 * band.width();
      const double w = w_of_lambda(m, lambda);
      const double im0 = green_tree_boundary(m, lambda, 0).imag();
      for (int d = 1; d <= 6; ++d)
        worst_ratio = std::max(worst_ratio,
                               std::abs(green_tree_boundary(m, lambda, d).imag() / im0 - spherical_closed(2, w, d)));
    }
  }
  return {worst <= 1e-10 && worst_ratio <= 1e-10,
          "metric vs continued fraction " + fmt(worst) + ", spherical ratio " + fmt(worst_ratio)};
}

// ---------------------------------------------------------------- 4
Verdict limit_densities() {
  double worst_int = 0.0, worst_free = 0.0, worst_diag = 0.0;
  for (double amp : {0.0, 1.0})
    for (double alpha : {0.0, 0.5}) {
      const auto m = make_model(2, amp, alpha, 1024);
      const Band band = select_band(m, 0.0, 45.0, 1);
      for (int i = 0; i < 20; ++i) {
        const double lambda = band.lo + (i + 0.5) / 20.0 * band.width();
        const EnergyData e = energy_data(m, lambda);
        const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double x) { return psi_density(e, x); }, 0.0, 1.0, 8, 1e-14);
        worst_int = std::max(worst_int, std::abs(integral - 2.0 / 3.0));
        for (int j = 0; j <= 40; ++j) {
          const double x = j / 40.0;
          const double psi = psi_density(e, x);
          if (amp == 0.0 && alpha == 0.0) worst_free = std::max(worst_free, std::abs(psi - 2.0 / 3.0));
          worst_diag = std::max(worst_diag, std::abs(2.0 * psi_correlator(e, 1, x, x) - psi));
        }
      }
    }
  return {worst_int <= 1e-8 && worst_free <= 1e-10 && worst_diag <= 1e-10,
          "integral " + fmt(worst_int) + ", free constant " + fmt(worst_free) + ", diagonal " + fmt(worst_diag)};
}

// ---------------------------------------------------------------- 5
struct CorrespondenceWorst {
  double eigen = 0.0, norm = 0.0, current = 0.0, lift = 0.0;
  int pairs = 0;
};

void check_correspondence(const Graph& g, const TreeModel& m, CorrespondenceWorst& worst) {
  const auto bands = find_bands(m, 0.0, 45.0).bands;
  const auto spec = adjacency_spectrum(g);
  for (const auto& band : bands)
    for (const auto& p : band_spectrum(g, m, band, spec)) {
      ++worst.pairs;
      const EnergyData e = energy_data(m, p.lambda);
      const double w = w_of_lambda(m, p.lambda);
      double r2 = 0.0;
      for (Vertex v = 0; v < g.n_vertices(); ++v) {
        double acc = -w * p.psi_ring[static_cast<std::size_t>(v)];
        for (Vertex u : g.neighbors(v)) acc += p.psi_ring[static_cast<std::size_t>(u)];
        r2 += acc * acc;
      }
      worst.eigen = std::max(worst.eigen, std::sqrt(r2));

      double norm2 = 0.0;
      for (EdgeId k = 0; k < g.n_edges(); ++k) {
        auto psi = eigenfunction_samples(g, e, p, k);
        for (double& x : psi) x *= x;
        norm2 += oracle::quadrature(psi, m.length);
      }
      worst.norm = std::max(worst.norm, std::abs(norm2 - 1.0));

      // Outgoing derivatives: psi'(0) = -from s' + to on a bond leaving v.
      const double s = e.basis.s, sp = e.basis.s_prime;
      for (Vertex v = 0; v < g.n_vertices(); ++v) {
        double current = -m.alpha * p.psi_ring[static_cast<std::size_t>(v)];
        for (Vertex u : g.neighbors(v))
          current += -p.psi_ring[static_cast<std::size_t>(v)] / s * sp + p.psi_ring[static_cast<std::size_t>(u)] / s;
        worst.current = std::max(worst.current, std::abs(current));
      }

      const cplx mu = mu_pm(m, p.lambda).minus;
      const auto nd = static_cast<std::size_t>(g.n_directed());
      std::vector<cplx> f(nd), fs(nd);
      for (DirectedId b = 0; b < g.n_directed(); ++b) {
        const double po = p.psi_ring[static_cast<std::size_t>(g.origin(b))];
        const double pt = p.psi_ring[static_cast<std::size_t>(g.terminus(b))];
        f[static_cast<std::size_t>(b)] = pt - mu * po;
        fs[static_cast<std::size_t>(b)] = po - mu * pt;
      }
      double rf = 0.0, rs = 0.0;
      for (DirectedId b = 0; b < g.n_directed(); ++b) {
        cplx bf = 0.0, bs = 0.0;
        for (DirectedId c : g.outgoing(g.terminus(b)))
          if (c != Graph::reverse(b)) bf += f[static_cast<std::size_t>(c)];
        // Adjoint: sum over bonds entering the origin, reversal excluded.
        for (DirectedId c : g.outgoing(g.origin(b)))
          if (c != b) bs += fs[static_cast<std::size_t>(Graph::reverse(c))];
        rf += std::norm(mu * bf - f[static_cast<std::size_t>(b)]);
        rs += std::norm(mu * bs - fs[static_cast<std::size_t>(b)]);
      }
      worst.lift = std::max({worst.lift, std::sqrt(rf), std::sqrt(rs)});
    }
}

Verdict spectral_correspondence() {
  CorrespondenceWorst worst;
  for (int seed = 1; seed <= 10; ++seed) {
    const Graph g = generate_graph(GraphKind::random_regular, 100, 3, static_cast<std::uint64_t>(seed));
    check_correspondence(g, make_model(2, 0.0, 0.0, 256), worst);
    check_correspondence(g, make_model(2, 1.0, 0.5, 256), worst);
  }
  return {worst.pairs > 0 && worst.eigen <= 1e-8 && worst.norm <= 1e-5 && worst.current <= 1e-7 && worst.lift <= 1e-10,
          std::to_string(worst.pairs) + " pairs; eigen " + fmt(worst.eigen) + ", norm " + fmt(worst.norm) + ", current " +
              fmt(worst.current) + ", lift " + fmt(worst.lift)};
}

// ---------------------------------------------------------------- 6
double kesten_mckay_histogram(int q, double lo, double hi) {
  const double edge = 2.0 * std::sqrt(q);
  lo = std::max(lo, -edge);
  hi = std::min(hi, edge);
  if (hi <= lo) return 0.0;
  constexpr int bins = 400000;
  const double h = (hi - lo) / bins, qq = q;
  double mass = 0.0;
  for (int i = 0; i < bins; ++i) {
    const double m = lo + (i + 0.5) * h;
    mass += (qq + 1) * std::sqrt(4 * qq - m * m) / (2 * std::numbers::pi * ((qq + 1) * (qq + 1) - m * m)) * h;
  }
  return mass;
}

Verdict kesten_mckay_count() {
  const auto m = make_model(2, 0.0, 0.0, 256);
  const Band band = select_band(m, 0.0, 45.0, 1);
  const Graph g = generate_graph(GraphKind::random_regular, 2000, 3, 7);
  const auto spec = adjacency_spectrum(g, false);
  std::string detail;
  bool pass = true;
  // The full band, then its middle half.
  for (double frac : {1.0, 0.5}) {
    const double mid = 0.5 * (band.w_min() + band.w_max()), half = 0.5 * frac * (band.w_max() - band.w_min());
    const double lo = mid - half, hi = mid + half;
    const auto count = std::count_if(spec.eigenvalues.begin(), spec.eigenvalues.end(),
                                     [&](double x) { return x > lo && x < hi && std::abs(x) < 2 * std::sqrt(2.0) - 1e-9; });
    const double ratio = static_cast<double>(count) / 2000.0;
    const double mass = kesten_mckay_histogram(2, lo, hi);
    const double rel = std::abs(ratio - mass) / mass;
    if (frac == 1.0 && band_members(spec, m, band).size() != static_cast<std::size_t>(count)) pass = false;
    pass = pass && rel <= 0.05;
    detail += (detail.empty() ? "" : "; ") + std::string("N(I)/N ") + fmt(ratio) + " vs mass " + fmt(mass) +
              " (rel " + fmt(rel) + ")";
  }
  return {pass, detail};
}

// ---------------------------------------------------------------- 7
// Free cycle of n unit edges; trigonometric modes in band 1 written out
// directly, position X = i + x on edge (i, i+1) and X = n - x on (0, n-1).
Verdict cycle_benchmark() {
  const auto m = make_model(1, 0.0, 0.0, 128);
  const Band band = select_band(m, 0.0, 12.0, 1);
  constexpr int grid = 128;
  std::mt19937_64 rng(99);
  bool pass = true;
  double worst_ratio = 0.0, worst_match = 0.0;
  for (int n : {20, 50, 100}) {
    const Graph c = generate_graph(GraphKind::cycle, n, 2, 0);
    struct Mode {
      int j;
      bool sine;
    };
    std::vector<Mode> modes;
    for (int j = 1; 2 * j < n; ++j) modes.push_back({j, true}), modes.push_back({j, false});
    for (int trial = 0; trial < 5; ++trial) {
      EdgeFunction f{grid, {}};
      for (EdgeId e = 0; e < c.n_edges(); ++e)
        for (int i = 0; i <= grid; ++i) f.samples.push_back(oracle::uniform(rng, -1.0, 1.0));
      double total = 0.0;
      for (EdgeId e = 0; e < c.n_edges(); ++e) {
        const auto fe = f.edge(e);
        total += oracle::quadrature(std::vector<double>(fe.begin(), fe.end()), 1.0);
      }
      const double limit = total / n;
      double variance = 0.0;
      for (const Mode& md : modes) {
        const double k = 2 * std::numbers::pi * md.j / n;
        double value = 0.0;
        for (EdgeId e = 0; e < c.n_edges(); ++e) {
          const auto& ed = c.edge(e);
          const bool wrap = ed.origin == 0 && ed.terminus == n - 1;
          const auto fe = f.edge(e);
          std::vector<double> prod(grid + 1);
          for (int i = 0; i <= grid; ++i) {
            const double x = static_cast<double>(i) / grid;
            const double X = wrap ? n - x : ed.origin + x;
            const double psi = std::sqrt(2.0 / n) * (md.sine ? std::sin(k * X) : std::cos(k * X));
            prod[static_cast<std::size_t>(i)] = fe[static_cast<std::size_t>(i)] * psi * psi;
          }
          value += oracle::quadrature(prod, 1.0);
        }
        variance += (value - limit) * (value - limit);
      }
      variance /= static_cast<double>(modes.size());
      const auto rep = cycle_benchmark_variance(c, 1.0, grid, band, f);
      worst_match = std::max(worst_match, std::abs(rep.variance - variance));
      worst_ratio = std::max(worst_ratio, variance * static_cast<double>(modes.size()));
      pass = pass && rep.N_I == static_cast<int>(modes.size()) && variance <= 1.0 / static_cast<double>(modes.size()) &&
             rep.variance <= 1.0 / rep.N_I;
    }
  }
  pass = pass && worst_match <= 1e-12;
  return {pass, "max variance * N(I) " + fmt(worst_ratio) + ", library vs explicit basis " + fmt(worst_match)};
}

// ---------------------------------------------------------------- 8
Verdict ergodicity_trend() {
  SweepConfig cfg;
  cfg.kind = GraphKind::random_regular;
  cfg.sizes = {100, 200, 400, 800};
  cfg.degree = 3;
  cfg.model = make_model(2, 0.0, 0.0, 256);
  cfg.band_index = 1;
  cfg.trials = 10;
  cfg.order = 2;
  cfg.seed = 1;
  cfg.validate();
  const Band band = select_band(cfg.model, cfg.range_lo, cfg.range_hi, cfg.band_index);
  const std::vector<ObservableFamily> families{ObservableFamily::edge_constant_pm1,
                                               ObservableFamily::edge_function_sign_sin,
                                               ObservableFamily::path_kernel_pm1};
  std::vector<std::vector<SweepRow>> rows(families.size());
  for (int n : cfg.sizes)
    for (int t = 0; t < cfg.trials; ++t) {
      const auto reports = run_trial(cfg, band, n, t, families);
      for (std::size_t f = 0; f < families.size(); ++f)
        rows[f].push_back({n, t, band.index, reports[f].N_I, reports[f].variance});
    }
  bool pass = true;
  std::string detail;
  for (std::size_t f = 0; f < families.size(); ++f) {
    const auto summary = summarize(rows[f]);
    const double ratio = summary.back().mean_variance / summary.front().mean_variance;
    pass = pass && ratio < 0.5;
    detail += (f ? "; " : "") + to_string(families[f]) + " ratio " + fmt(ratio);
  }
  return {pass, detail};
}

// ---------------------------------------------------------------- 9
// Value of the eigenfunction at distance t along directed bond b.
double along_bond(const Graph& g, const TreeModel& m, const Eigenpair& p, DirectedId b, double t) {
  return eval_eigenfunction(g, m, p, Graph::undirected(b), (b & 1) ? 1.0 - t : t);
}

Verdict oracle_equivalence() {
  std::mt19937_64 rng(17);
  double worst_edge = 0.0, worst_kernel = 0.0;
  int pairs_seen = 0;
  const std::vector<Graph> graphs{generate_graph(GraphKind::complete, 4, 3, 0),
                                  generate_graph(GraphKind::random_regular, 50, 3, 5)};
  const auto& nodes = Gauss::abscissa();
  const auto& weights = Gauss::weights();
  // Symmetric Gauss rule on [0, 1] from the half-rule tables.
  std::vector<double> gx, gw;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    gx.push_back(0.5 + 0.5 * nodes[i]);
    gw.push_back(0.5 * weights[i]);
    if (nodes[i] != 0.0) {
      gx.push_back(0.5 - 0.5 * nodes[i]);
      gw.push_back(0.5 * weights[i]);
    }
  }
  for (const Graph& g : graphs) {
    // Smooth edge observable with random coefficients.
    const auto m = make_model(2, 1.0, 0.5, 256);
    std::vector<std::array<double, 3>> coef(static_cast<std::size_t>(g.n_edges()));
    EdgeFunction f{m.grid_n, {}};
    auto f_at = [&](EdgeId e, double x) {
      const auto& a = coef[static_cast<std::size_t>(e)];
      return a[0] + a[1] * std::cos(2 * std::numbers::pi * x) + a[2] * x * x;
    };
    for (EdgeId e = 0; e < g.n_edges(); ++e) {
      for (double& a : coef[static_cast<std::size_t>(e)]) a = oracle::uniform(rng, -1.0 / 3, 1.0 / 3);
      for (int i = 0; i <= m.grid_n; ++i) f.samples.push_back(f_at(e, static_cast<double>(i) / m.grid_n));
    }
    // Smooth kernel on 2-paths.
    const auto mk = make_model(2, 0.0, 0.5, 128);
    PathKernel K = make_path_kernel(g, 2, mk.grid_n);
    std::vector<std::array<double, 3>> kc(K.paths->size());
    auto k_at = [&](std::size_t p, double x, double y) {
      const auto& a = kc[p];
      return a[0] + a[1] * std::cos(std::numbers::pi * x) * y + a[2] * std::sin(3 * y) * x;
    };
    const auto kn = static_cast<std::size_t>(mk.grid_n + 1);
    for (std::size_t p = 0; p < K.paths->size(); ++p) {
      for (double& a : kc[p]) a = oracle::uniform(rng, -1.0 / 3, 1.0 / 3);
      for (std::size_t i = 0; i < kn; ++i)
        for (std::size_t j = 0; j < kn; ++j)
          K.table[p * K.stride() + i * kn + j] =
              k_at(p, static_cast<double>(i) / mk.grid_n, static_cast<double>(j) / mk.grid_n);
    }

    for (const auto& band : find_bands(m, 0.0, 45.0).bands)
      for (const auto& p : band_spectrum(g, m, band)) {
        ++pairs_seen;
        double direct = 0.0;
        for (EdgeId e = 0; e < g.n_edges(); ++e)
          direct += Gauss::integrate([&](double x) { return f_at(e, x) * std::pow(eval_eigenfunction(g, m, p, e, x), 2); },
                                     0.0, 1.0);
        worst_edge = std::max(worst_edge, std::abs(expectation_edge(g, m, p, f) - direct));
      }
    for (const auto& band : find_bands(mk, 0.0, 45.0).bands)
      for (const auto& p : band_spectrum(g, mk, band)) {
        ++pairs_seen;
        double direct = 0.0;
        for (std::size_t i = 0; i < K.paths->size(); ++i) {
          std::vector<double> first(gx.size()), last(gx.size());
          for (std::size_t a = 0; a < gx.size(); ++a) {
            first[a] = along_bond(g, mk, p, K.paths->first_bond(i), gx[a]);
            last[a] = along_bond(g, mk, p, K.paths->last_bond(i), gx[a]);
          }
          for (std::size_t a = 0; a < gx.size(); ++a)
            for (std::size_t b = 0; b < gx.size(); ++b)
              direct += gw[a] * gw[b] * k_at(i, gx[a], gx[b]) * first[a] * last[b];
        }
        const EnergyData e = energy_data(mk, p.lambda);
        worst_kernel = std::max(worst_kernel, std::abs(expectation_kernel(g, e, p, K) - 0.5 * direct));
      }
  }
  return {worst_edge <= 1e-7 && worst_kernel <= 1e-6,
          std::to_string(pairs_seen) + " pairs; edge " + fmt(worst_edge) + ", kernel " + fmt(worst_kernel)};
}

// ---------------------------------------------------------------- 10
std::map<std::string, std::string> read_tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    out[fs::relative(entry.path(), dir).string()] = s.str();
  }
  return out;
}

Verdict determinism() {
  const fs::path root = fs::temp_directory_path() / "qglab_acceptance_determinism";
  fs::remove_all(root);
  const std::string base =
      "run.trials = 3\nrun.grid_n = 128\nrun.dump_eigenfunctions = true\n"
      "model.potential = cosine:1\nmodel.alpha = 0.5\n";
  const std::vector<std::string> observables{"edge_constant_pm1", "edge_function_sign_sin", "path_kernel_pm1"};
  std::ostringstream log;
  auto run_all = [&](const fs::path& dir, int threads) {
    set_thread_count(threads);
    for (const auto& obs : observables) {
      const auto cfg = parse_config(base + "observable.kind = " + obs + "\ngraph.sizes = 60, 120\n");
      const fs::path d = dir / obs;
      cmd_bands(cfg, d / "bands", log);
      cmd_spectrum(parse_config(base + "observable.kind = " + obs + "\ngraph.sizes = 60\n"), d / "spectrum", log);
      cmd_sweep(cfg, d / "sweep", log);
      cmd_validate(cfg, d / "validate", log);
    }
    return read_tree(dir);
  };
  const auto a = run_all(root / "serial_a", 1);
  const auto b = run_all(root / "serial_b", 1);
  const auto c = run_all(root / "threads8", 8);
  set_thread_count(0);
  fs::remove_all(root);
  const bool pass = !a.empty() && a == b && a == c;
  return {pass, std::to_string(a.size()) + " files compared across 3 runs (1, 1, 8 threads)"};
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;  // 0 means no runtime bound
  std::function<Verdict()> run;
};

}  // namespace

// Optional arguments select criteria by number.
int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  const std::vector<Criterion> criteria{
      {1, "edge identities", 10, edge_identity_suite},
      {2, "band structure", 0, band_structure},
      {3, "green identities", 5, green_identities},
      {4, "limit densities", 0, limit_densities},
      {5, "spectral correspondence", 60, spectral_correspondence},
      {6, "kesten-mckay count", 120, kesten_mckay_count},
      {7, "cycle benchmark", 30, cycle_benchmark},
      {8, "ergodicity trend", 900, ergodicity_trend},
      {9, "oracle equivalence", 0, oracle_equivalence},
      {10, "determinism", 0, determinism},
  };
  int failures = 0;
  int ran = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      v.pass = false;
      v.detail += "; over the " + fmt(c.limit_seconds) + " s budget";
    }
    if (!v.pass) ++failures;
    std::printf("criterion %2d %-24s %s  (%s) [%.2f s]\n", c.id, c.name.c_str(), v.pass ? "PASS" : "FAIL",
                v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", ran - failures, ran);
  return failures == 0 ? 0 : 1;
}
