#include "qglab/edge_ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qglab/errors.hpp"

namespace qglab {

namespace {

constexpr double kSeriesThreshold = 1e-4;

void check_grid(int grid_n) {
  if (grid_n < 2 || grid_n % 2 != 0) throw ConfigError("grid_n must be even and >= 2, got " + std::to_string(grid_n));
}

template <class T>
struct State {
  T C, Cp, S, Sp;
};

// Closed form for U = 0. cos(k x) and sin(k x) / k are even in k, so the
// branch of the square root is irrelevant.
template <class T>
State<T> free_solution(T lambda, double x) {
  const T z = lambda * (x * x);
  if (std::abs(z) < kSeriesThreshold) {
    const T C = 1.0 - z / 2.0 + z * z / 24.0 - z * z * z / 720.0;
    const T S = x * (1.0 - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0);
    const T Cp = -lambda * x * (1.0 - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0);
    return {C, Cp, S, C};
  }
  if constexpr (std::is_same_v<T, double>) {
    const double k = std::sqrt(std::abs(lambda));
    if (lambda > 0.0) return {std::cos(k * x), -k * std::sin(k * x), std::sin(k * x) / k, std::cos(k * x)};
    return {std::cosh(k * x), k * std::sinh(k * x), std::sinh(k * x) / k, std::cosh(k * x)};
  } else {
    const T k = std::sqrt(lambda);
    const T co = std::cos(k * x), si = std::sin(k * x);
    return {co, -k * si, si / k, co};
  }
}

// One RK4 step of u'' = (U - lambda) u for both solutions; u0, um, u1 are the
// potential at the start, midpoint and end of the step.
template <class T>
State<T> rk4_step(const State<T>& y, T lambda, double h, double u0, double um, double u1) {
  const T a0 = u0 - lambda, am = um - lambda, a1 = u1 - lambda;
  auto deriv = [](const State<T>& s, T a) { return State<T>{s.Cp, a * s.C, s.Sp, a * s.S}; };
  auto axpy = [](const State<T>& s, const State<T>& d, double f) {
    return State<T>{s.C + f * d.C, s.Cp + f * d.Cp, s.S + f * d.S, s.Sp + f * d.Sp};
  };
  const State<T> k1 = deriv(y, a0);
  const State<T> k2 = deriv(axpy(y, k1, 0.5 * h), am);
  const State<T> k3 = deriv(axpy(y, k2, 0.5 * h), am);
  const State<T> k4 = deriv(axpy(y, k3, h), a1);
  const double w = h / 6.0;
  return {y.C + w * (k1.C + 2.0 * k2.C + 2.0 * k3.C + k4.C), y.Cp + w * (k1.Cp + 2.0 * k2.Cp + 2.0 * k3.Cp + k4.Cp),
          y.S + w * (k1.S + 2.0 * k2.S + 2.0 * k3.S + k4.S), y.Sp + w * (k1.Sp + 2.0 * k2.Sp + 2.0 * k3.Sp + k4.Sp)};
}

template <class T>
std::vector<State<T>> integrate(const Potential& u, T lambda, int grid_n) {
  const auto& half = u.half_grid(grid_n);
  const double h = u.length() / grid_n;
  std::vector<State<T>> out(static_cast<std::size_t>(grid_n) + 1);
  out[0] = {T(1.0), T(0.0), T(0.0), T(1.0)};
  for (std::size_t i = 0; i < static_cast<std::size_t>(grid_n); ++i)
    out[i + 1] = rk4_step(out[i], lambda, h, half[2 * i], half[2 * i + 1], half[2 * i + 2]);
  return out;
}

}  // namespace

double tol_ode(int grid_n) { return grid_n >= 1024 ? 1e-8 : 1e-6; }

EdgeBasis edge_basis(const Potential& u, double lambda, int grid_n, OdeOptions options) {
  check_grid(grid_n);
  if (!std::isfinite(lambda)) throw std::invalid_argument("edge_basis: lambda must be finite");
  EdgeBasis b;
  b.lambda = lambda;
  b.length = u.length();
  b.grid_n = grid_n;
  const std::size_t n = static_cast<std::size_t>(grid_n) + 1;
  b.C.resize(n);
  b.S.resize(n);
  b.C_prime.resize(n);
  b.S_prime.resize(n);
  if (u.is_zero() && !options.force_rk4) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = i + 1 == n ? b.length : b.length * static_cast<double>(i) / grid_n;
      const auto st = free_solution(lambda, x);
      b.C[i] = st.C;
      b.C_prime[i] = st.Cp;
      b.S[i] = st.S;
      b.S_prime[i] = st.Sp;
    }
  } else {
    const auto states = integrate<double>(u, lambda, grid_n);
    for (std::size_t i = 0; i < n; ++i) {
      b.C[i] = states[i].C;
      b.C_prime[i] = states[i].Cp;
      b.S[i] = states[i].S;
      b.S_prime[i] = states[i].Sp;
    }
  }
  b.c = b.C.back();
  b.s = b.S.back();
  b.c_prime = b.C_prime.back();
  b.s_prime = b.S_prime.back();
  return b;
}

EdgePoint solution_at(const Potential& u, double lambda, int grid_n, double x) {
  check_grid(grid_n);
  const double length = u.length();
  if (!(x >= 0.0 && x <= length)) throw std::invalid_argument("solution_at: x outside [0, L]");
  if (u.is_zero()) {
    const auto st = free_solution(lambda, x);
    return {st.C, st.S, st.Cp, st.Sp};
  }
  const auto& half = u.half_grid(grid_n);
  const double h = length / grid_n;
  const auto steps = std::min(static_cast<std::size_t>(std::floor(x / h)), static_cast<std::size_t>(grid_n));
  State<double> y{1.0, 0.0, 0.0, 1.0};
  for (std::size_t i = 0; i < steps; ++i) y = rk4_step(y, lambda, h, half[2 * i], half[2 * i + 1], half[2 * i + 2]);
  const double x0 = h * static_cast<double>(steps);
  const double rest = x - x0;
  if (rest > 0.0) y = rk4_step(y, lambda, rest, u.value(x0), u.value(x0 + 0.5 * rest), u.value(x));
  return {y.C, y.S, y.Cp, y.Sp};
}

namespace {

template <class T>
EndpointData<T> endpoint(const Potential& u, T lambda, int grid_n) {
  check_grid(grid_n);
  if (u.is_zero()) {
    const auto st = free_solution(lambda, u.length());
    return {st.C, st.S, st.Cp, st.Sp};
  }
  const auto& half = u.half_grid(grid_n);
  const double h = u.length() / grid_n;
  State<T> y{T(1.0), T(0.0), T(0.0), T(1.0)};
  for (std::size_t i = 0; i < static_cast<std::size_t>(grid_n); ++i)
    y = rk4_step(y, lambda, h, half[2 * i], half[2 * i + 1], half[2 * i + 2]);
  return {y.C, y.S, y.Cp, y.Sp};
}

}  // namespace

EndpointData<double> edge_endpoint(const Potential& u, double lambda, int grid_n) {
  return endpoint(u, lambda, grid_n);
}

ComplexEndpoint edge_endpoint(const Potential& u, std::complex<double> gamma, int grid_n) {
  return endpoint(u, gamma, grid_n);
}

Matrix2 monodromy(const EdgeBasis& basis) { return {{{basis.c, basis.s}, {basis.c_prime, basis.s_prime}}}; }

double simpson(std::span<const double> v, double step) {
  const std::size_t n = v.size();
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("simpson: need an odd number of samples >= 3");
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i + 1 < n; i += 2) odd += v[i];
  for (std::size_t i = 2; i + 1 < n; i += 2) even += v[i];
  return step / 3.0 * (v.front() + 4.0 * odd + 2.0 * even + v.back());
}

Moments observable_moments(const EdgeBasis& basis, std::span<const double> f) {
  const std::size_t n = basis.S.size();
  if (f.size() != n) throw std::invalid_argument("observable_moments: samples do not match the grid");
  std::vector<double> a(n), b(n), c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double right = basis.S[n - 1 - i], left = basis.S[i];
    a[i] = f[i] * right * right;
    b[i] = f[i] * right * left;
    c[i] = f[i] * left * left;
  }
  const double h = basis.step();
  return {simpson(a, h), simpson(b, h), simpson(c, h)};
}

EdgeIdentityResiduals edge_identities(const EdgeBasis& basis) {
  EdgeIdentityResiduals r{};
  r.wronskian = std::abs(basis.c * basis.s_prime - basis.s * basis.c_prime - 1.0);
  r.symmetry = std::abs(basis.c - basis.s_prime);
  const std::size_t n = basis.S.size();
  for (std::size_t i = 0; i < n; ++i)
    r.reflection = std::max(r.reflection, std::abs(basis.s * basis.C[i] - basis.c * basis.S[i] - basis.S[n - 1 - i]));
  return r;
}

}  // namespace qglab
