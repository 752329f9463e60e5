#include "qglab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace qglab {

Matrix adjacency_matrix(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.n_vertices());
  Matrix a(n);
  for (const auto& e : g.edges()) {
    a(static_cast<std::size_t>(e.origin), static_cast<std::size_t>(e.terminus)) += 1.0;
    a(static_cast<std::size_t>(e.terminus), static_cast<std::size_t>(e.origin)) += 1.0;
  }
  return a;
}

SpectralData adjacency_spectrum(const Graph& g, bool want_vectors, Execution exec) {
  auto eig = symmetric_eigen(adjacency_matrix(g), want_vectors, exec);
  return {std::move(eig.values), std::move(eig.vectors)};
}

double spectral_gap(const SpectralData& spec, int degree) {
  double worst = 0.0;
  for (std::size_t j = 1; j < spec.eigenvalues.size(); ++j) worst = std::max(worst, std::abs(spec.eigenvalues[j]));
  return 1.0 - worst / degree;
}

double kesten_mckay_density(int q, double m) {
  const double edge2 = 4.0 * q;
  if (m * m >= edge2) return 0.0;
  const double d = q + 1.0;
  return d * std::sqrt(edge2 - m * m) / (2.0 * std::numbers::pi * (d * d - m * m));
}

double kesten_mckay_mass(int q, double lo, double hi) {
  const double edge = 2.0 * std::sqrt(static_cast<double>(q));
  lo = std::max(lo, -edge);
  hi = std::min(hi, edge);
  if (!(hi > lo)) return 0.0;
  // m = edge cos(t) removes the square-root endpoint behaviour (singular for q = 1).
  const double t0 = std::acos(hi / edge), t1 = std::acos(lo / edge);
  // (q+1)^2 - m^2 = (q-1)^2 + r^2 with r = edge sin(t).
  if (q == 1) return (t1 - t0) / std::numbers::pi;
  const double gap = (q - 1.0) * (q - 1.0);
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(
      [&](double t) {
        const double r = edge * std::sin(t);
        return (q + 1) * r * r / (2.0 * std::numbers::pi * (gap + r * r));
      },
      t0, t1);
}

}  // namespace qglab
