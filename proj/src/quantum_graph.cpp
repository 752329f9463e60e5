#include "qglab/quantum_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "qglab/errors.hpp"

namespace qglab {

namespace {

void check_model(const Graph& g, const TreeModel& model) {
  model.validate();
  if (g.q() != model.q)
    throw std::invalid_argument("graph degree " + std::to_string(g.degree()) + " does not match model q = " +
                                std::to_string(model.q));
  if (model.q == 1 && !model.is_free())
    throw ConfigError("q = 1 (cycle graphs) is supported only for U = 0 and alpha = 0");
}

// Deterministic sign: the first entry of largest magnitude is positive.
void fix_sign(std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  if (!v.empty() && v[best] < 0.0)
    for (double& x : v) x = -x;
}

double s_at(const TreeModel& model, double lambda, double x) {
  return solution_at(model.potential, lambda, model.grid_n, x).S;
}

}  // namespace

std::vector<std::size_t> band_members(const SpectralData& spec, const TreeModel& model, const Band& band) {
  const double edge = model.band_edge() - kBandEdgeGuard;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < spec.eigenvalues.size(); ++j) {
    const double m = spec.eigenvalues[j];
    if (m > band.w_min() && m < band.w_max() && std::abs(m) < edge) out.push_back(j);
  }
  return out;
}

std::vector<Eigenpair> band_spectrum(const Graph& g, const TreeModel& model, const Band& band, const SpectralData& spec,
                                     Execution exec) {
  check_model(g, model);
  if (spec.eigenvectors.size() != static_cast<std::size_t>(g.n_vertices()))
    throw std::invalid_argument("band_spectrum: eigenvectors are required");
  const auto members = band_members(spec, model, band);
  std::vector<Eigenpair> out(members.size());
  parallel_for(
      exec, members.size(),
      [&](std::size_t i) {
        const std::size_t j = members[i];
        Eigenpair& p = out[i];
        p.m = spec.eigenvalues[j];
        p.band_index = band.index;
        p.lambda = invert_w_on_band(model, band, p.m);
        p.kappa = kappa(model, p.lambda);
        const auto row = spec.eigenvectors.row(j);
        p.psi_ring.assign(row.begin(), row.end());
        fix_sign(p.psi_ring);
        const double scale = 1.0 / std::sqrt(p.kappa);
        for (double& x : p.psi_ring) x *= scale;
      },
      true);
  std::stable_sort(out.begin(), out.end(), [](const Eigenpair& a, const Eigenpair& b) { return a.lambda < b.lambda; });
  return out;
}

std::vector<Eigenpair> band_spectrum(const Graph& g, const TreeModel& model, const Band& band, Execution exec) {
  check_model(g, model);
  return band_spectrum(g, model, band, adjacency_spectrum(g, true, exec), exec);
}

EdgeCoefficients edge_coefficients(const Graph& g, std::span<const double> vertex_values, double s) {
  if (static_cast<int>(vertex_values.size()) != g.n_vertices())
    throw std::invalid_argument("edge_coefficients: one value per vertex required");
  EdgeCoefficients c;
  c.from.resize(static_cast<std::size_t>(g.n_edges()));
  c.to.resize(c.from.size());
  for (EdgeId e = 0; e < g.n_edges(); ++e) {
    const auto& ed = g.edge(e);
    c.from[static_cast<std::size_t>(e)] = vertex_values[static_cast<std::size_t>(ed.origin)] / s;
    c.to[static_cast<std::size_t>(e)] = vertex_values[static_cast<std::size_t>(ed.terminus)] / s;
  }
  return c;
}

double eval_eigenfunction(const Graph& g, const TreeModel& model, const Eigenpair& pair, EdgeId edge, double x) {
  const auto& ed = g.edge(edge);
  const double L = model.length;
  if (x < 0.0 || x > L) throw std::invalid_argument("eval_eigenfunction: x outside [0, L]");
  const double s_end = edge_endpoint(model.potential, pair.lambda, model.grid_n).s;
  const double from = pair.psi_ring[static_cast<std::size_t>(ed.origin)] / s_end;
  const double to = pair.psi_ring[static_cast<std::size_t>(ed.terminus)] / s_end;
  return from * s_at(model, pair.lambda, L - x) + to * s_at(model, pair.lambda, x);
}

std::vector<double> eigenfunction_samples(const Graph& g, const EnergyData& energy, const Eigenpair& pair,
                                          EdgeId edge) {
  const auto& ed = g.edge(edge);
  const auto& S = energy.basis.S;
  const std::size_t n = S.size() - 1;
  const double from = pair.psi_ring[static_cast<std::size_t>(ed.origin)] / energy.s();
  const double to = pair.psi_ring[static_cast<std::size_t>(ed.terminus)] / energy.s();
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out[i] = from * S[n - i] + to * S[i];
  return out;
}

double metric_norm_squared(const Graph& g, const EnergyData& energy, const Eigenpair& pair) {
  double total = 0.0;
  std::vector<double> sq;
  for (EdgeId e = 0; e < g.n_edges(); ++e) {
    sq = eigenfunction_samples(g, energy, pair, e);
    for (double& v : sq) v *= v;
    total += simpson(sq, energy.basis.step());
  }
  return total;
}

KirchhoffResidual kirchhoff_residual(const Graph& g, const EdgeBasis& basis, double alpha,
                                     const EdgeCoefficients& coeff) {
  const auto nv = static_cast<std::size_t>(g.n_vertices());
  std::vector<double> lo(nv, INFINITY), hi(nv, -INFINITY), sum(nv, 0.0), current(nv, 0.0);
  const double s = basis.s, sp = basis.s_prime;
  for (EdgeId e = 0; e < g.n_edges(); ++e) {
    const auto k = static_cast<std::size_t>(e);
    const auto o = static_cast<std::size_t>(g.edge(e).origin);
    const auto t = static_cast<std::size_t>(g.edge(e).terminus);
    const double a = coeff.from[k], b = coeff.to[k];
    const double v0 = a * s, v1 = b * s;
    const double d0 = -a * sp + b, d1 = -a + b * sp;
    lo[o] = std::min(lo[o], v0);
    hi[o] = std::max(hi[o], v0);
    lo[t] = std::min(lo[t], v1);
    hi[t] = std::max(hi[t], v1);
    sum[o] += v0;
    sum[t] += v1;
    current[o] += d0;
    current[t] -= d1;
  }
  KirchhoffResidual r;
  const double deg = g.degree();
  for (std::size_t v = 0; v < nv; ++v) {
    r.continuity_max = std::max(r.continuity_max, hi[v] - lo[v]);
    r.current_max = std::max(r.current_max, std::abs(current[v] - alpha * sum[v] / deg));
  }
  return r;
}

KirchhoffResidual kirchhoff_residual(const Graph& g, const Eigenpair& pair, const TreeModel& model) {
  const EdgeBasis basis = model_basis(model, pair.lambda);
  return kirchhoff_residual(g, basis, model.alpha, edge_coefficients(g, pair.psi_ring, basis.s));
}

NbLift nb_lift(const Graph& g, const TreeModel& model, const Eigenpair& pair) {
  const auto mu = mu_pm(model, pair.lambda).minus;
  NbLift out;
  const auto nd = static_cast<std::size_t>(g.n_directed());
  out.f.resize(nd);
  out.f_star.resize(nd);
  for (DirectedId b = 0; b < g.n_directed(); ++b) {
    const double po = pair.psi_ring[static_cast<std::size_t>(g.origin(b))];
    const double pt = pair.psi_ring[static_cast<std::size_t>(g.terminus(b))];
    out.f[static_cast<std::size_t>(b)] = pt - mu * po;
    out.f_star[static_cast<std::size_t>(b)] = po - mu * pt;
  }
  const auto bf = nb_apply(g, out.f);
  const auto bsf = nb_apply_adjoint(g, out.f_star);
  double r = 0.0, rs = 0.0;
  for (std::size_t i = 0; i < nd; ++i) {
    r += std::norm(mu * bf[i] - out.f[i]);
    rs += std::norm(mu * bsf[i] - out.f_star[i]);
  }
  out.residual = std::sqrt(r);
  out.residual_star = std::sqrt(rs);
  return out;
}

double dirichlet_eigenvalue(const TreeModel& model, int n) {
  if (n < 1) throw std::invalid_argument("dirichlet_eigenvalue: n must be >= 1");
  model.validate();
  const auto u = model.potential.grid(model.grid_n);
  const double umin = *std::min_element(u.begin(), u.end());
  const double umax = *std::max_element(u.begin(), u.end());
  const double unit = std::pow(std::numbers::pi / model.length, 2);
  const double lo = umin - 1.0;
  const double hi = n * n * unit + umax + 1.0;
  const double step = unit / 400.0;
  auto s = [&](double l) { return edge_endpoint(model.potential, l, model.grid_n).s; };

  int found = 0;
  double a = lo, fa = s(a);
  const auto steps = static_cast<long>(std::ceil((hi - lo) / step));
  for (long i = 1; i <= steps; ++i) {
    const double b = lo + static_cast<double>(i) * step;
    const double fb = s(b);
    if (fa == 0.0) {
      if (++found == n) return a;
    } else if (fa * fb < 0.0) {
      if (++found == n) {
        std::uintmax_t iters = 200;
        const auto br = boost::math::tools::toms748_solve(s, a, b, fa, fb,
                                                          boost::math::tools::eps_tolerance<double>(50), iters);
        return 0.5 * (br.first + br.second);
      }
    }
    a = b;
    fa = fb;
  }
  throw NumericalError("Dirichlet eigenvalue " + std::to_string(n) + " not found in scan");
}

CycleMode dirichlet_cycle_eigenfunction(const Graph& g, const std::vector<Vertex>& cycle, const TreeModel& model,
                                        int n) {
  const std::size_t len = cycle.size();
  if (len < 3) throw std::invalid_argument("dirichlet_cycle_eigenfunction: cycle needs at least 3 vertices");
  for (std::size_t i = 0; i < len; ++i) {
    if (g.find_directed(cycle[i], cycle[(i + 1) % len]) < 0)
      throw std::invalid_argument("dirichlet_cycle_eigenfunction: consecutive vertices are not adjacent");
    for (std::size_t j = i + 1; j < len; ++j)
      if (cycle[i] == cycle[j]) throw std::invalid_argument("dirichlet_cycle_eigenfunction: cycle is not simple");
  }
  CycleMode mode;
  mode.lambda = dirichlet_eigenvalue(model, n);
  mode.basis = model_basis(model, mode.lambda);
  mode.cycle = cycle;
  const double sp = mode.basis.s_prime;
  if (std::abs(std::pow(sp, static_cast<double>(len)) - 1.0) > 1e-6)
    throw std::invalid_argument("dirichlet_cycle_eigenfunction: s'^length = " +
                                std::to_string(std::pow(sp, static_cast<double>(len))) +
                                " != 1, the cycle does not close at this energy");

  std::vector<double> s2(mode.basis.S.size());
  for (std::size_t i = 0; i < s2.size(); ++i) s2[i] = mode.basis.S[i] * mode.basis.S[i];
  const double int_s2 = simpson(s2, mode.basis.step());
  double a = 1.0 / std::sqrt(static_cast<double>(len) * int_s2);

  mode.coeff.from.assign(static_cast<std::size_t>(g.n_edges()), 0.0);
  mode.coeff.to.assign(mode.coeff.from.size(), 0.0);
  for (std::size_t i = 0; i < len; ++i) {
    const Vertex u = cycle[i], v = cycle[(i + 1) % len];
    const auto e = static_cast<std::size_t>(Graph::undirected(g.find_directed(u, v)));
    if (u < v)
      mode.coeff.to[e] = a;
    else
      mode.coeff.from[e] = a;
    a *= sp;
  }
  return mode;
}

std::vector<TrigMode> cycle_trig_modes(int n_vertices, double length, const Band& band) {
  if (n_vertices < 3 || length <= 0.0) throw std::invalid_argument("cycle_trig_modes: invalid cycle");
  std::vector<TrigMode> out;
  const double total = n_vertices * length;
  const double slack = 1e-9 * (1.0 + std::abs(band.hi));
  for (int j = 0;; ++j) {
    const double freq = 2.0 * std::numbers::pi * j / total;
    const double lambda = freq * freq;
    if (lambda > band.hi + slack) break;
    const double m = 2.0 * std::cos(freq * length);
    if (lambda < band.lo - slack || !(m > band.w_min() && m < band.w_max()) || std::abs(m) >= 2.0 - kBandEdgeGuard)
      continue;
    if (j == 0) {
      out.push_back({0, false, lambda});
    } else {
      out.push_back({j, true, lambda});
      out.push_back({j, false, lambda});
    }
  }
  return out;
}

std::vector<double> trig_mode_samples(const Graph& cycle, double length, int grid_n, const TrigMode& mode,
                                      EdgeId edge) {
  const int n = cycle.n_vertices();
  const double total = n * length;
  const auto& ed = cycle.edge(edge);
  double offset = 0.0, dir = 1.0;
  if (ed.terminus == ed.origin + 1) {
    offset = ed.origin * length;
  } else if (ed.origin == 0 && ed.terminus == n - 1) {
    offset = total;
    dir = -1.0;
  } else {
    throw std::invalid_argument("trig_mode_samples: graph is not the standard cycle");
  }
  std::vector<double> out(static_cast<std::size_t>(grid_n) + 1);
  const double h = length / grid_n;
  if (mode.j == 0) {
    std::fill(out.begin(), out.end(), 1.0 / std::sqrt(total));
    return out;
  }
  const double amp = std::sqrt(2.0 / total);
  const double k = 2.0 * std::numbers::pi * mode.j / total;
  for (int i = 0; i <= grid_n; ++i) {
    const double X = offset + dir * i * h;
    out[static_cast<std::size_t>(i)] = amp * (mode.sine ? std::sin(k * X) : std::cos(k * X));
  }
  return out;
}

CsvWriter spectrum_csv(const std::vector<Eigenpair>& pairs, const std::vector<KirchhoffResidual>& residuals) {
  if (residuals.size() != pairs.size()) throw std::invalid_argument("spectrum_csv: one residual per pair required");
  CsvWriter csv({"band", "lambda", "m", "multiplicity_index", "continuity_max", "current_max"});
  int mult = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const bool same = i > 0 && pairs[i].band_index == pairs[i - 1].band_index &&
                      std::abs(pairs[i].m - pairs[i - 1].m) < 1e-8;
    mult = same ? mult + 1 : 0;
    csv.row({std::to_string(pairs[i].band_index), format_real(pairs[i].lambda), format_real(pairs[i].m),
             std::to_string(mult), format_real(residuals[i].continuity_max), format_real(residuals[i].current_max)});
  }
  return csv;
}

CsvWriter eigenfunction_csv(const Graph& g, const EnergyData& energy, const Eigenpair& pair) {
  CsvWriter csv({"edge", "x", "psi"});
  const double h = energy.basis.step();
  for (EdgeId e = 0; e < g.n_edges(); ++e) {
    const auto v = eigenfunction_samples(g, energy, pair, e);
    for (std::size_t i = 0; i < v.size(); ++i)
      csv.row({std::to_string(e), format_real(static_cast<double>(i) * h), format_real(v[i])});
  }
  return csv;
}

}  // namespace qglab
