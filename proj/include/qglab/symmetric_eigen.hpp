#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qglab/parallel.hpp"

namespace qglab {

// Dense row-major square matrix.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::span<const double> data() const { return data_; }

  static Matrix identity(std::size_t n);

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Symmetric tridiagonal form T = Q^T A Q. diagonal has n entries,
// off_diagonal[i] couples i and i+1 (n - 1 entries).
struct Tridiagonal {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;
  Matrix q;  // empty unless requested
};

// Householder reduction. The O(n^3) row updates and the accumulation of Q run
// through parallel_for.
Tridiagonal tridiagonalize(Matrix a, bool accumulate, Execution exec = Execution::parallel);

// Implicit-shift QL on a symmetric tridiagonal matrix. When vectors is
// non-null its rows are rotated alongside (pass Q^T to obtain eigenvectors of
// the original matrix as rows). Eigenvalues are returned unsorted, in the
// order matching the rows of *vectors.
std::vector<double> tridiagonal_ql(std::vector<double> diagonal, std::vector<double> off_diagonal,
                                   Matrix* vectors, Execution exec = Execution::parallel);

struct SymmetricEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // row j is the unit eigenvector of values[j]; empty if not requested
};

// Full symmetric eigendecomposition; throws NumericalError on non-convergence.
SymmetricEigen symmetric_eigen(const Matrix& a, bool want_vectors, Execution exec = Execution::parallel);

}  // namespace qglab
