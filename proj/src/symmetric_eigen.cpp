#include "qglab/symmetric_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qglab/errors.hpp"

namespace qglab {

namespace {

constexpr std::size_t kColumnBlock = 128;

struct Rotation {
  std::size_t i;
  double c;
  double s;
};

std::size_t block_count(std::size_t n) { return (n + kColumnBlock - 1) / kColumnBlock; }

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Tridiagonal tridiagonalize(Matrix a, bool accumulate, Execution exec) {
  const std::size_t n = a.size();
  Tridiagonal out;
  out.diagonal.assign(n, 0.0);
  out.off_diagonal.assign(n > 0 ? n - 1 : 0, 0.0);
  std::vector<double> betas(n, 0.0);
  std::vector<double> p(n), w(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t first = k + 1;
    const std::size_t m = n - first;
    auto v = a.row(k).subspan(first, m);  // column k below the diagonal, by symmetry
    double tail = 0.0;
    for (std::size_t i = 1; i < m; ++i) tail += v[i] * v[i];
    if (tail == 0.0) {
      out.off_diagonal[k] = v[0];
      betas[k] = 0.0;
      continue;
    }
    const double norm = std::sqrt(v[0] * v[0] + tail);
    const double alpha = v[0] >= 0.0 ? -norm : norm;
    const double beta = 1.0 / (norm * (norm + std::abs(v[0])));
    v[0] -= alpha;
    out.off_diagonal[k] = alpha;
    betas[k] = beta;

    // p = beta * S v on the trailing block S = A[first:, first:].
    parallel_for(exec, m, [&](std::size_t i) {
      const auto row = a.row(first + i).subspan(first, m);
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += row[j] * v[j];
      p[i] = beta * acc;
    });
    double pv = 0.0;
    for (std::size_t i = 0; i < m; ++i) pv += p[i] * v[i];
    const double half = 0.5 * beta * pv;
    for (std::size_t i = 0; i < m; ++i) w[i] = p[i] - half * v[i];
    // S -= v w^T + w v^T
    parallel_for(exec, m, [&](std::size_t i) {
      auto row = a.row(first + i).subspan(first, m);
      const double vi = v[i], wi = w[i];
      for (std::size_t j = 0; j < m; ++j) row[j] -= vi * w[j] + wi * v[j];
    });
  }
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = a(i, i);
  if (n >= 2) out.off_diagonal[n - 2] = a(n - 2, n - 1);

  if (accumulate) {
    Matrix q = Matrix::identity(n);
    std::vector<double> r(n);
    for (std::size_t kk = n >= 3 ? n - 2 : 0; kk-- > 0;) {
      if (betas[kk] == 0.0) continue;
      const std::size_t first = kk + 1;
      const std::size_t m = n - first;
      const auto v = a.row(kk).subspan(first, m);
      const double beta = betas[kk];
      // r = v^T Q_sub, by column blocks so each entry has a fixed summation order.
      parallel_for(exec, block_count(m), [&](std::size_t blk) {
        const std::size_t j0 = blk * kColumnBlock, j1 = std::min(m, j0 + kColumnBlock);
        for (std::size_t j = j0; j < j1; ++j) r[j] = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          const auto row = q.row(first + i).subspan(first, m);
          const double vi = v[i];
          for (std::size_t j = j0; j < j1; ++j) r[j] += vi * row[j];
        }
      });
      parallel_for(exec, m, [&](std::size_t i) {
        auto row = q.row(first + i).subspan(first, m);
        const double f = beta * v[i];
        for (std::size_t j = 0; j < m; ++j) row[j] -= f * r[j];
      });
    }
    out.q = std::move(q);
  }
  return out;
}

std::vector<double> tridiagonal_ql(std::vector<double> d, std::vector<double> off, Matrix* vectors,
                                   Execution exec) {
  const std::size_t n = d.size();
  if (n == 0) return d;
  if (off.size() + 1 != n) throw std::invalid_argument("tridiagonal_ql: off-diagonal must have n - 1 entries");
  if (vectors && vectors->size() != n) throw std::invalid_argument("tridiagonal_ql: vector matrix size mismatch");
  std::vector<double> e(n, 0.0);
  std::copy(off.begin(), off.end(), e.begin());

  constexpr int kMaxSweeps = 60;
  std::vector<Rotation> rotations;
  rotations.reserve(n);
  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    while (true) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) + dd == dd) break;
      }
      if (m == l) break;
      if (++sweeps > kMaxSweeps)
        throw NumericalError("tridiagonal QL did not converge for eigenvalue " + std::to_string(l));

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool deflated = false;
      rotations.clear();
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        rotations.push_back({i, c, s});
      }
      if (vectors && !rotations.empty()) {
        Matrix& z = *vectors;
        parallel_for(exec, block_count(n), [&](std::size_t blk) {
          const std::size_t j0 = blk * kColumnBlock, j1 = std::min(n, j0 + kColumnBlock);
          for (const auto& rot : rotations) {
            auto lower = z.row(rot.i);
            auto upper = z.row(rot.i + 1);
            for (std::size_t j = j0; j < j1; ++j) {
              const double t = upper[j];
              upper[j] = rot.s * lower[j] + rot.c * t;
              lower[j] = rot.c * lower[j] - rot.s * t;
            }
          }
        });
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  return d;
}

SymmetricEigen symmetric_eigen(const Matrix& a, bool want_vectors, Execution exec) {
  const std::size_t n = a.size();
  Tridiagonal t = tridiagonalize(a, want_vectors, exec);
  Matrix rows;
  if (want_vectors) {
    rows = Matrix(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rows(j, i) = t.q(i, j);
  }
  auto values = tridiagonal_ql(std::move(t.diagonal), std::move(t.off_diagonal), want_vectors ? &rows : nullptr, exec);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });

  SymmetricEigen out;
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.values[j] = values[order[j]];
  if (want_vectors) {
    out.vectors = Matrix(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto src = rows.row(order[j]);
      std::copy(src.begin(), src.end(), out.vectors.row(j).begin());
    }
  }
  return out;
}

}  // namespace qglab
