#include "qglab/ergodicity.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qglab {

namespace {

std::vector<double> simpson_weights(int grid_n, double step) {
  std::vector<double> w(static_cast<std::size_t>(grid_n) + 1);
  for (int i = 0; i <= grid_n; ++i) w[static_cast<std::size_t>(i)] = (i == 0 || i == grid_n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
  for (double& x : w) x *= step / 3.0;
  return w;
}

double psi_at(const Eigenpair& pair, Vertex v) { return pair.psi_ring[static_cast<std::size_t>(v)]; }

// Per-edge moments (from-from, cross, to-to) of the observable, divided by s^2.
struct EdgeWeights {
  std::vector<double> a, b, c;
};

EdgeWeights edge_weights(const Graph& g, const EnergyData& energy, const Observable& obs) {
  const auto ne = static_cast<std::size_t>(g.n_edges());
  const double inv_s2 = 1.0 / (energy.s() * energy.s());
  EdgeWeights w{std::vector<double>(ne), std::vector<double>(ne), std::vector<double>(ne)};
  if (const auto* c = std::get_if<EdgeConstant>(&obs)) {
    if (c->values.size() != ne) throw std::invalid_argument("expectation_edge: one value per edge required");
    for (std::size_t e = 0; e < ne; ++e) {
      w.a[e] = w.c[e] = c->values[e] * energy.int_s2 * inv_s2;
      w.b[e] = c->values[e] * energy.int_cross * inv_s2;
    }
  } else if (const auto* f = std::get_if<EdgeFunction>(&obs)) {
    if (f->grid_n != energy.basis.grid_n)
      throw std::invalid_argument("expectation_edge: edge function grid differs from the energy grid");
    if (f->samples.size() != ne * static_cast<std::size_t>(f->grid_n + 1))
      throw std::invalid_argument("expectation_edge: sample count does not match the graph");
    for (std::size_t e = 0; e < ne; ++e) {
      const auto m = observable_moments(energy.basis, f->edge(static_cast<EdgeId>(e)));
      w.a[e] = m.a * inv_s2;
      w.b[e] = m.b * inv_s2;
      w.c[e] = m.c * inv_s2;
    }
  } else {
    throw std::invalid_argument("expectation_edge: path kernels go through expectation_kernel");
  }
  return w;
}

void check_kernel(const Graph& g, const EnergyData& energy, const PathKernel& kernel) {
  if (kernel.grid_n != energy.basis.grid_n)
    throw std::invalid_argument("path kernel grid differs from the energy grid");
  if (!kernel.paths || kernel.paths->size() != PathSet::expected_count(g, kernel.k) ||
      kernel.table.size() != kernel.paths->size() * kernel.stride())
    throw std::invalid_argument("path kernel does not match the graph");
}

}  // namespace

double expectation_edge(const Graph& g, const EnergyData& energy, const Eigenpair& pair, const Observable& obs) {
  const auto w = edge_weights(g, energy, obs);
  // Vertex part K + J and bond part M over directed bonds; each edge is seen twice.
  const auto nv = static_cast<std::size_t>(g.n_vertices());
  std::vector<double> vertex(nv, 0.0);
  double bond = 0.0;
  for (DirectedId b = 0; b < g.n_directed(); ++b) {
    const auto e = static_cast<std::size_t>(Graph::undirected(b));
    const bool forward = (b & 1) == 0;
    const Vertex o = g.origin(b), t = g.terminus(b);
    vertex[static_cast<std::size_t>(o)] += forward ? w.a[e] : w.c[e];
    vertex[static_cast<std::size_t>(t)] += forward ? w.c[e] : w.a[e];
    bond += 2.0 * w.b[e] * psi_at(pair, o) * psi_at(pair, t);
  }
  double diag = 0.0;
  for (std::size_t v = 0; v < nv; ++v) diag += vertex[v] * pair.psi_ring[v] * pair.psi_ring[v];
  return 0.5 * (diag + bond);
}

double expectation_edge(const Graph& g, const TreeModel& model, const Eigenpair& pair, const Observable& obs) {
  return expectation_edge(g, energy_data(model, pair.lambda), pair, obs);
}

double limit_average(const Graph& g, const EnergyData& energy, const Observable& obs) {
  if (const auto* c = std::get_if<EdgeConstant>(&obs)) {
    if (c->values.size() != static_cast<std::size_t>(g.n_edges()))
      throw std::invalid_argument("limit_average: one value per edge required");
    return std::accumulate(c->values.begin(), c->values.end(), 0.0) / g.n_edges();
  }
  if (const auto* f = std::get_if<EdgeFunction>(&obs)) {
    if (f->grid_n != energy.basis.grid_n)
      throw std::invalid_argument("limit_average: edge function grid differs from the energy grid");
    const auto density = psi_density_grid(energy);
    std::vector<double> prod(density.size());
    double total = 0.0;
    for (EdgeId e = 0; e < g.n_edges(); ++e) {
      const auto fe = f->edge(e);
      for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = fe[i] * density[i];
      total += simpson(prod, energy.basis.step());
    }
    return total / g.n_vertices();
  }
  throw std::invalid_argument("limit_average: path kernels go through limit_kernel_average");
}

double limit_average(const Graph& g, const TreeModel& model, double lambda, const Observable& obs) {
  if (std::holds_alternative<EdgeConstant>(obs)) return limit_average(g, EnergyData{}, obs);
  return limit_average(g, energy_data(model, lambda), obs);
}

double expectation_kernel(const Graph& g, const EnergyData& energy, const Eigenpair& pair, const PathKernel& kernel,
                          Execution exec) {
  check_kernel(g, energy, kernel);
  const int n = kernel.grid_n;
  const auto un = static_cast<std::size_t>(n);
  const auto wts = simpson_weights(n, energy.basis.step());
  const auto& S = energy.basis.S;
  // Weighted S(L - t) and S(t).
  std::vector<double> wl(un + 1), w0(un + 1);
  for (std::size_t i = 0; i <= un; ++i) {
    wl[i] = wts[i] * S[un - i];
    w0[i] = wts[i] * S[i];
  }
  const PathSet& paths = *kernel.paths;
  const int k = kernel.k;
  std::vector<double> contrib(paths.size());
  parallel_for(exec, paths.size(), [&](std::size_t p) {
    const auto K = kernel.kernel(p);
    double ll = 0.0, l0 = 0.0, zl = 0.0, zz = 0.0;
    for (std::size_t i = 0; i <= un; ++i) {
      const double* row = K.data() + i * (un + 1);
      double rl = 0.0, r0 = 0.0;
      for (std::size_t j = 0; j <= un; ++j) {
        rl += row[j] * wl[j];
        r0 += row[j] * w0[j];
      }
      ll += wl[i] * rl;
      l0 += wl[i] * r0;
      zl += w0[i] * rl;
      zz += w0[i] * r0;
    }
    const auto v = paths.path(p);
    const double x0 = psi_at(pair, v[0]), x1 = psi_at(pair, v[1]);
    const double y0 = psi_at(pair, v[static_cast<std::size_t>(k - 1)]), y1 = psi_at(pair, v[static_cast<std::size_t>(k)]);
    contrib[p] = x0 * y0 * ll + x1 * y1 * zz + x0 * y1 * l0 + x1 * y0 * zl;
  });
  const double total = std::accumulate(contrib.begin(), contrib.end(), 0.0);
  return 0.5 * total / (energy.s() * energy.s());
}

double limit_kernel_average(const Graph& g, const EnergyData& energy, const PathKernel& kernel, Execution exec) {
  check_kernel(g, energy, kernel);
  const auto un = static_cast<std::size_t>(kernel.grid_n);
  const auto wts = simpson_weights(kernel.grid_n, energy.basis.step());
  auto weighted = psi_correlator_grid(energy, kernel.k);
#ifndef NDEBUG
  {
    const double L = energy.model.length, x = 0.25 * L, y = 0.625 * L;
    const double a = psi_correlator(energy, kernel.k, x, y), b = psi_correlator_green(energy, kernel.k, x, y);
    if (std::abs(a - b) > 1e-8 * (1.0 + std::abs(a)))
      throw std::logic_error("correlator representations disagree");
  }
#endif
  for (std::size_t i = 0; i <= un; ++i)
    for (std::size_t j = 0; j <= un; ++j) weighted[i * (un + 1) + j] *= wts[i] * wts[j];
  const PathSet& paths = *kernel.paths;
  std::vector<double> contrib(paths.size());
  parallel_for(exec, paths.size(), [&](std::size_t p) {
    const auto K = kernel.kernel(p);
    double acc = 0.0;
    for (std::size_t i = 0; i < K.size(); ++i) acc += K[i] * weighted[i];
    contrib[p] = acc;
  });
  return std::accumulate(contrib.begin(), contrib.end(), 0.0) / g.n_vertices();
}

double expectation(const Graph& g, const EnergyData& energy, const Eigenpair& pair, const Observable& obs,
                   Execution exec) {
  if (const auto* k = std::get_if<PathKernel>(&obs)) return expectation_kernel(g, energy, pair, *k, exec);
  return expectation_edge(g, energy, pair, obs);
}

double limit_value(const Graph& g, const EnergyData& energy, const Observable& obs, Execution exec) {
  if (const auto* k = std::get_if<PathKernel>(&obs)) return limit_kernel_average(g, energy, *k, exec);
  return limit_average(g, energy, obs);
}

VarianceReport quantum_variance(const Graph& g, const TreeModel& model, const Band& band,
                                const std::vector<Eigenpair>& pairs, const Observable& obs, Execution exec) {
  validate_observable(obs, g);
  VarianceReport r;
  r.band_index = band.index;
  r.N = g.n_vertices();
  r.N_I = static_cast<int>(pairs.size());
  r.per_eigenvalue.resize(pairs.size());
  parallel_for(
      exec, pairs.size(),
      [&](std::size_t i) {
        const EnergyData energy = energy_data(model, pairs[i].lambda);
        const std::complex<double> dev = expectation(g, energy, pairs[i], obs, exec) - limit_value(g, energy, obs, exec);
        r.per_eigenvalue[i] = {pairs[i].lambda, std::norm(dev)};
      },
      true);
  if (pairs.empty()) {
    r.variance = NAN;
    return r;
  }
  double sum = 0.0;
  for (const auto& pe : r.per_eigenvalue) sum += pe.second;
  r.variance = sum / static_cast<double>(pairs.size());
  return r;
}

VarianceReport quantum_variance(const Graph& g, const TreeModel& model, const Band& band, const Observable& obs,
                                Execution exec) {
  return quantum_variance(g, model, band, band_spectrum(g, model, band, exec), obs, exec);
}

double contract_vertices(const Graph& g, const PathSet* paths, const DiscreteKernel& kernel,
                         std::span<const double> u) {
  double acc = 0.0;
  if (kernel.k == 0) {
    if (kernel.values.size() != static_cast<std::size_t>(g.n_vertices()))
      throw std::invalid_argument("vertex kernel needs one value per vertex");
    for (std::size_t v = 0; v < kernel.values.size(); ++v) acc += kernel.values[v] * u[v] * u[v];
    return acc;
  }
  if (!paths || paths->order() != kernel.k || paths->size() != kernel.values.size())
    throw std::invalid_argument("kernel order does not match the path enumeration");
  for (std::size_t p = 0; p < paths->size(); ++p) {
    const auto v = paths->path(p);
    acc += kernel.values[p] * u[static_cast<std::size_t>(v.front())] * u[static_cast<std::size_t>(v.back())];
  }
  return acc;
}

std::complex<double> contract_bonds(const PathSet& paths, const DiscreteKernel& kernel,
                                    std::span<const std::complex<double>> f_star,
                                    std::span<const std::complex<double>> f) {
  if (kernel.k < 1 || paths.order() != kernel.k || paths.size() != kernel.values.size())
    throw std::invalid_argument("kernel order does not match the path enumeration");
  std::complex<double> acc{};
  for (std::size_t p = 0; p < paths.size(); ++p)
    acc += kernel.values[p] * std::conj(f_star[static_cast<std::size_t>(paths.first_bond(p))]) *
           f[static_cast<std::size_t>(paths.last_bond(p))];
  return acc;
}

DiagnosticVariances diagnostic_variances(const Graph& g, const TreeModel& model, const std::vector<Eigenpair>& pairs,
                                         const PathSet* paths, const KernelFamily& family) {
  DiagnosticVariances out;
  out.N_I = static_cast<int>(pairs.size());
  if (pairs.empty()) return {NAN, NAN, 0};
  double var = 0.0, varnb = 0.0;
  bool vertex_only = false;
  for (const auto& pair : pairs) {
    const DiscreteKernel kernel = family(pair);
    var += std::norm(contract_vertices(g, paths, kernel, pair.psi_ring));
    if (kernel.k == 0) {
      vertex_only = true;
      continue;
    }
    const NbLift lift = nb_lift(g, model, pair);
    varnb += std::norm(contract_bonds(*paths, kernel, lift.f_star, lift.f));
  }
  const auto n = static_cast<double>(pairs.size());
  out.var_I = var / n;
  out.varnb_I = vertex_only ? NAN : varnb / n;
  return out;
}

VarianceReport cycle_benchmark_variance(const Graph& cycle, double length, int grid_n, const Band& band,
                                        const Observable& obs) {
  if (cycle.degree() != 2) throw std::invalid_argument("cycle benchmark needs a cycle graph");
  validate_observable(obs, cycle);
  const int n = cycle.n_vertices();
  const double h = length / grid_n;
  const auto ne = static_cast<std::size_t>(cycle.n_edges());

  // Observable samples per edge.
  std::vector<std::vector<double>> f(ne, std::vector<double>(static_cast<std::size_t>(grid_n) + 1));
  if (const auto* c = std::get_if<EdgeConstant>(&obs)) {
    for (std::size_t e = 0; e < ne; ++e) std::fill(f[e].begin(), f[e].end(), c->values[e]);
  } else if (const auto* fn = std::get_if<EdgeFunction>(&obs)) {
    if (fn->grid_n != grid_n) throw std::invalid_argument("cycle benchmark: edge function grid mismatch");
    for (std::size_t e = 0; e < ne; ++e) {
      const auto s = fn->edge(static_cast<EdgeId>(e));
      f[e].assign(s.begin(), s.end());
    }
  } else {
    throw std::invalid_argument("cycle benchmark supports edge observables only");
  }
  double limit = 0.0;
  for (const auto& fe : f) limit += simpson(fe, h);
  limit /= n * length;

  const auto modes = cycle_trig_modes(n, length, band);
  VarianceReport r;
  r.band_index = band.index;
  r.N = n;
  r.N_I = static_cast<int>(modes.size());
  std::vector<double> prod(static_cast<std::size_t>(grid_n) + 1);
  double sum = 0.0;
  for (const auto& mode : modes) {
    double ex = 0.0;
    for (EdgeId e = 0; e < cycle.n_edges(); ++e) {
      const auto psi = trig_mode_samples(cycle, length, grid_n, mode, e);
      for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = f[static_cast<std::size_t>(e)][i] * psi[i] * psi[i];
      ex += simpson(prod, h);
    }
    const double dev2 = (ex - limit) * (ex - limit);
    r.per_eigenvalue.emplace_back(mode.lambda, dev2);
    sum += dev2;
  }
  r.variance = modes.empty() ? NAN : sum / static_cast<double>(modes.size());
  return r;
}

}  // namespace qglab
