#pragma once

#include <complex>
#include <vector>

#include "qglab/csv.hpp"
#include "qglab/graph.hpp"
#include "qglab/parallel.hpp"
#include "qglab/spectrum.hpp"
#include "qglab/tree.hpp"

namespace qglab {

// Band eigenpair of the quantum graph. psi_ring is the vertex trace, scaled
// so the metric eigenfunction has unit L2 norm; its squared norm is 1/kappa.
struct Eigenpair {
  double lambda = 0.0;
  double m = 0.0;  // adjacency eigenvalue, w(lambda) = m
  std::vector<double> psi_ring;
  int band_index = 0;
  double kappa = 0.0;
};

// Indices j with m_j strictly inside w(band) and away from |m| = 2 sqrt(q).
std::vector<std::size_t> band_members(const SpectralData& spec, const TreeModel& model, const Band& band);

// Secular inversion of every adjacency eigenvalue inside w(band), sorted by
// lambda. For q = 1 only the free model (U = 0, alpha = 0) is accepted.
std::vector<Eigenpair> band_spectrum(const Graph& g, const TreeModel& model, const Band& band, const SpectralData& spec,
                                     Execution exec = Execution::parallel);
std::vector<Eigenpair> band_spectrum(const Graph& g, const TreeModel& model, const Band& band,
                                     Execution exec = Execution::parallel);

// Metric function psi_e(x) = from[e] S(L - x) + to[e] S(x) on every
// undirected edge, x measured from the canonical origin.
struct EdgeCoefficients {
  std::vector<double> from, to;
};
EdgeCoefficients edge_coefficients(const Graph& g, std::span<const double> vertex_values, double s);

double eval_eigenfunction(const Graph& g, const TreeModel& model, const Eigenpair& pair, EdgeId edge, double x);
std::vector<double> eigenfunction_samples(const Graph& g, const EnergyData& energy, const Eigenpair& pair, EdgeId edge);
double metric_norm_squared(const Graph& g, const EnergyData& energy, const Eigenpair& pair);

struct KirchhoffResidual {
  double continuity_max = 0.0;
  double current_max = 0.0;
};
KirchhoffResidual kirchhoff_residual(const Graph& g, const Eigenpair& pair, const TreeModel& model);
// Derivatives come from the S' samples at the edge ends.
KirchhoffResidual kirchhoff_residual(const Graph& g, const EdgeBasis& basis, double alpha, const EdgeCoefficients& coeff);

struct NbLift {
  std::vector<std::complex<double>> f, f_star;  // indexed by directed edge
  double residual = 0.0;                        // ||mu B f - f||
  double residual_star = 0.0;                   // ||mu B* f* - f*||
};
NbLift nb_lift(const Graph& g, const TreeModel& model, const Eigenpair& pair);

// n-th root (n >= 1) of s, i.e. the n-th Dirichlet eigenvalue of the edge.
double dirichlet_eigenvalue(const TreeModel& model, int n);

struct CycleMode {
  double lambda = 0.0;
  std::vector<Vertex> cycle;
  EdgeCoefficients coeff;  // zero off the cycle; unit L2 norm
  EdgeBasis basis;
};
// Eigenfunction at the n-th Dirichlet eigenvalue carried by a simple cycle.
// Coefficients propagate as a_{i+1} = s' a_i along the cycle, so the cycle
// must close: rejected when s'^length != 1 (odd cycles with s' = -1).
CycleMode dirichlet_cycle_eigenfunction(const Graph& g, const std::vector<Vertex>& cycle, const TreeModel& model, int n);

// Explicit real trigonometric eigenbasis of the free cycle of N edges of
// length L: the constant mode, then sin and cos of 2 pi j X / (N L).
struct TrigMode {
  int j = 0;
  bool sine = false;
  double lambda = 0.0;
};
// Modes are kept when lambda lies in the band and w = 2 cos(sqrt(lambda) L)
// passes the same interior test as band_members.
std::vector<TrigMode> cycle_trig_modes(int n_vertices, double length, const Band& band);
// Grid samples of a mode on one canonical edge of generate_graph(cycle, N).
std::vector<double> trig_mode_samples(const Graph& cycle, double length, int grid_n, const TrigMode& mode, EdgeId edge);

CsvWriter spectrum_csv(const std::vector<Eigenpair>& pairs, const std::vector<KirchhoffResidual>& residuals);
CsvWriter eigenfunction_csv(const Graph& g, const EnergyData& energy, const Eigenpair& pair);

}  // namespace qglab
