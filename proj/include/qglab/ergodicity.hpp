#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "qglab/observable.hpp"
#include "qglab/quantum_graph.hpp"

namespace qglab {

// <psi, f psi> through the vertex and bond contractions of the edge moments.
// Edge functions must share the energy's grid.
double expectation_edge(const Graph& g, const EnergyData& energy, const Eigenpair& pair, const Observable& obs);
double expectation_edge(const Graph& g, const TreeModel& model, const Eigenpair& pair, const Observable& obs);

double limit_average(const Graph& g, const EnergyData& energy, const Observable& obs);
double limit_average(const Graph& g, const TreeModel& model, double lambda, const Observable& obs);

// <psi, K psi> for a path kernel; kernel grid must equal the energy grid.
double expectation_kernel(const Graph& g, const EnergyData& energy, const Eigenpair& pair, const PathKernel& kernel,
                          Execution exec = Execution::parallel);
double limit_kernel_average(const Graph& g, const EnergyData& energy, const PathKernel& kernel,
                            Execution exec = Execution::parallel);

// Expectation and limit for any observable kind.
double expectation(const Graph& g, const EnergyData& energy, const Eigenpair& pair, const Observable& obs,
                   Execution exec = Execution::parallel);
double limit_value(const Graph& g, const EnergyData& energy, const Observable& obs,
                   Execution exec = Execution::parallel);

struct VarianceReport {
  int band_index = 0;
  int N = 0;
  int N_I = 0;
  double variance = 0.0;  // NaN when N_I = 0
  std::vector<std::pair<double, double>> per_eigenvalue;  // (lambda, deviation^2)
};

VarianceReport quantum_variance(const Graph& g, const TreeModel& model, const Band& band,
                                const std::vector<Eigenpair>& pairs, const Observable& obs,
                                Execution exec = Execution::parallel);
VarianceReport quantum_variance(const Graph& g, const TreeModel& model, const Band& band, const Observable& obs,
                                Execution exec = Execution::parallel);

// Discrete kernel on vertices (k = 0) or on the k-paths of a PathSet (k >= 1).
struct DiscreteKernel {
  int k = 0;
  std::vector<double> values;
};
using KernelFamily = std::function<DiscreteKernel(const Eigenpair&)>;

// <u, K_G v> = sum over paths of K(p) u(x_0) v(x_k).
double contract_vertices(const Graph& g, const PathSet* paths, const DiscreteKernel& kernel, std::span<const double> u);
// <f*, K_B f> = sum over paths of K(p) conj(f*(first bond)) f(last bond).
std::complex<double> contract_bonds(const PathSet& paths, const DiscreteKernel& kernel,
                                    std::span<const std::complex<double>> f_star, std::span<const std::complex<double>> f);

struct DiagnosticVariances {
  double var_I = 0.0;
  double varnb_I = 0.0;  // NaN for k = 0
  int N_I = 0;
};
// paths may be null when the family has k = 0.
DiagnosticVariances diagnostic_variances(const Graph& g, const TreeModel& model, const std::vector<Eigenpair>& pairs,
                                         const PathSet* paths, const KernelFamily& family);

// Cycle of n edges, q = 1, U = 0, alpha = 0, against the explicit
// trigonometric eigenbasis of the band.
VarianceReport cycle_benchmark_variance(const Graph& cycle, double length, int grid_n, const Band& band,
                                        const Observable& obs);

}  // namespace qglab
