#pragma once

#include <vector>

#include "qglab/graph.hpp"
#include "qglab/symmetric_eigen.hpp"

namespace qglab {

struct SpectralData {
  std::vector<double> eigenvalues;  // descending
  Matrix eigenvectors;              // row j pairs with eigenvalues[j]; orthonormal
};

Matrix adjacency_matrix(const Graph& g);

SpectralData adjacency_spectrum(const Graph& g, bool want_vectors = true, Execution exec = Execution::parallel);

// 1 - max_{j >= 2} |m_j| / (q + 1).
double spectral_gap(const SpectralData& spec, int degree);

// Limiting spectral measure of random (q+1)-regular graphs, integrated over
// [lo, hi] (clipped to the support [-2 sqrt q, 2 sqrt q]).
double kesten_mckay_density(int q, double m);
double kesten_mckay_mass(int q, double lo, double hi);

}  // namespace qglab
