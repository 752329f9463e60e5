#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qglab/csv.hpp"
#include "qglab/edge_ode.hpp"
#include "qglab/potential.hpp"

namespace qglab {

// Equilateral quantum graph parameters shared by the infinite tree and every
// finite graph built on it.
struct TreeModel {
  int q = 2;                 // branching; degree is q + 1
  double length = 1.0;
  double alpha = 0.0;        // vertex coupling in the current-conservation condition
  Potential potential = Potential::zero(1.0);
  int grid_n = 256;          // shared edge grid, even

  void validate() const;
  bool is_free() const { return potential.is_zero() && alpha == 0.0; }
  double band_edge() const;  // 2 sqrt(q)
};

// Absolute half-width of the exclusion window around Dirichlet points.
inline constexpr double kDirichletTol = 1e-6;
// Adjacency eigenvalues this close to |m| = 2 sqrt(q) are not inverted.
inline constexpr double kBandEdgeGuard = 1e-9;

EdgeBasis model_basis(const TreeModel& model, double lambda);
double w_of_lambda(const TreeModel& model, double lambda);
double w_from_basis(const TreeModel& model, const EdgeBasis& basis);
std::complex<double> w_of_gamma(const TreeModel& model, std::complex<double> gamma);

struct MuPair {
  std::complex<double> plus, minus;
};
// Boundary values at lambda + i0 inside the AC spectrum: conjugate roots of
// q x^2 - w x + 1 with sign(Im mu_minus) = sign(s).
MuPair mu_pm_boundary(int q, double w, double s);
MuPair mu_pm(const TreeModel& model, double lambda);
// Off the real axis: mu_minus is the root of smaller modulus.
MuPair mu_pm_complex(int q, std::complex<double> w);

enum class BandDirection { increasing, decreasing };
std::string to_string(BandDirection d);

struct Band {
  int index = 0;  // 1-based, in order of lambda
  double lo = 0.0, hi = 0.0;
  double w_lo = 0.0, w_hi = 0.0;  // w at lo and hi
  BandDirection direction = BandDirection::increasing;

  double width() const { return hi - lo; }
  double w_min() const { return std::min(w_lo, w_hi); }
  double w_max() const { return std::max(w_lo, w_hi); }
  double midpoint() const { return 0.5 * (lo + hi); }
};

struct BandStructure {
  std::vector<Band> bands;
  std::vector<double> dirichlet;  // roots of s in the range, ascending
};

int default_scan_n(double lo, double hi);

// Maximal intervals of [lo, hi] with |w| < 2 sqrt(q) on which w is strictly
// monotone, plus the Dirichlet points. Bands cut by the range ends are kept.
// Throws NumericalError when the scan cannot certify monotonicity.
BandStructure find_bands(const TreeModel& model, double lo, double hi, int scan_n = 0);

// Unique lambda in the band with w(lambda) = m.
double invert_w_on_band(const TreeModel& model, const Band& band, double m);

// Spherical function of the (q+1)-regular tree by three-term recursion.
double spherical(int q, double m, int d);
std::vector<double> spherical_table(int q, double m, int d_max);
// Chebyshev closed form, |m| <= 2 sqrt(q).
double spherical_chebyshev(int q, double m, int d);

// Adjacency resolvent of the tree, (A - z)^{-1}(v, w) at distance d, in closed form.
std::complex<double> green_adjacency(int q, std::complex<double> z, int d);
// Same quantity from the self-consistency equation of the rooted branch,
// iterated to convergence. Independent of the closed form.
std::complex<double> green_adjacency_fixed_point(int q, std::complex<double> z, int d);

// Discrete vertex Green function of the metric tree, Im gamma != 0.
std::complex<double> green_tree_discrete(const TreeModel& model, std::complex<double> gamma, int d);
// Boundary value at lambda + i0 for lambda inside a band.
std::complex<double> green_tree_boundary(const TreeModel& model, double lambda, int d);

// Everything the limit densities and eigenfunction formulas need at one
// band energy.
struct EnergyData {
  TreeModel model;
  double lambda = 0.0;
  EdgeBasis basis;
  double w = 0.0;
  MuPair mu;
  double int_s2 = 0.0;     // integral of S^2
  double int_cross = 0.0;  // integral of S(L - t) S(t)
  double kappa = 0.0;

  double s() const { return basis.s; }
};

// Throws std::invalid_argument outside the AC spectrum and NumericalError
// within kDirichletTol of a root of s.
EnergyData energy_data(const TreeModel& model, double lambda);
void check_dirichlet_clearance(const TreeModel& model, double lambda);

double kappa(const TreeModel& model, double lambda);

// Limit density on an edge, normalized by kappa.
double psi_density(const EnergyData& e, double x);
double psi_density(const TreeModel& model, double lambda, double x);
std::vector<double> psi_density_grid(const EnergyData& e);

// Two-point correlator density for k-paths, k >= 1, through spherical functions.
double psi_correlator(const EnergyData& e, int k, double x, double y);
double psi_correlator(const TreeModel& model, double lambda, int k, double x, double y);
// Same quantity through imaginary parts of tree Green functions.
double psi_correlator_green(const EnergyData& e, int k, double x, double y);
// (grid_n + 1)^2 row-major table on the shared grid.
std::vector<double> psi_correlator_grid(const EnergyData& e, int k);

CsvWriter bands_csv(const BandStructure& bs);
CsvWriter dirichlet_csv(const BandStructure& bs);
// Density rows at the quarter points of each band, on the shared grid.
CsvWriter density_csv(const TreeModel& model, const BandStructure& bs);

}  // namespace qglab
