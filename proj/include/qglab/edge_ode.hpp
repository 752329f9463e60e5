#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "qglab/potential.hpp"

namespace qglab {

// Fundamental solutions of -u'' + U u = lambda u on [0, L] with
// C(0) = 1, C'(0) = 0, S(0) = 0, S'(0) = 1, sampled on a uniform grid.
struct EdgeBasis {
  double lambda = 0.0;
  double length = 0.0;
  int grid_n = 0;
  double c = 0.0, s = 0.0, c_prime = 0.0, s_prime = 0.0;  // values at x = L
  std::vector<double> C, S, C_prime, S_prime;              // grid_n + 1 samples each

  double step() const { return length / grid_n; }
};

struct OdeOptions {
  bool force_rk4 = false;  // integrate numerically even when U = 0
};

// Closed forms for U = 0 (trigonometric, hyperbolic, or series near lambda = 0);
// fixed-step RK4 on the shared grid otherwise. grid_n must be even.
EdgeBasis edge_basis(const Potential& u, double lambda, int grid_n, OdeOptions options = {});

struct EdgePoint {
  double C, S, C_prime, S_prime;
};
// Solution values at an arbitrary x in [0, L] (grid steps then one partial step).
EdgePoint solution_at(const Potential& u, double lambda, int grid_n, double x);

template <class T>
struct EndpointData {
  T c, s, c_prime, s_prime;
};
using ComplexEndpoint = EndpointData<std::complex<double>>;
// Endpoint data only, without grid samples.
EndpointData<double> edge_endpoint(const Potential& u, double lambda, int grid_n);
ComplexEndpoint edge_endpoint(const Potential& u, std::complex<double> gamma, int grid_n);

using Matrix2 = std::array<std::array<double, 2>, 2>;
// [[c, s], [c', s']]
Matrix2 monodromy(const EdgeBasis& basis);

// Integrals of f(t) S^2(L - t), f(t) S(L - t) S(t), f(t) S^2(t) by composite Simpson.
struct Moments {
  double a = 0.0, b = 0.0, c = 0.0;
};
Moments observable_moments(const EdgeBasis& basis, std::span<const double> f);

double simpson(std::span<const double> samples, double step);

// Identity tolerance: 1e-8 for grid_n >= 1024, 1e-6 below.
double tol_ode(int grid_n);

struct EdgeIdentityResiduals {
  double wronskian;   // |c s' - s c' - 1|
  double symmetry;    // |c - s'|
  double reflection;  // max_i |s C_i - c S_i - S_{n-i}|
};
EdgeIdentityResiduals edge_identities(const EdgeBasis& basis);

}  // namespace qglab
