#include "qglab/tree.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "qglab/errors.hpp"
#include "qglab/parallel.hpp"

namespace qglab {

namespace {

constexpr double kBisectTol = 1e-12;
// Golden-section extrema are only located to ~sqrt(eps); breakpoints from
// sign changes take precedence within this distance.
constexpr double kExtremumMerge = 1e-7;

struct Sample {
  double w;
  double s;
};

Sample sample(const TreeModel& model, double lambda) {
  const auto e = edge_endpoint(model.potential, lambda, model.grid_n);
  return {(model.q + 1) * e.c + model.alpha * e.s, e.s};
}

template <class F>
double bisect(F&& f, double a, double b, double fa) {
  while (b - a > kBisectTol) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

// Extremum of w in [a, b]; sign = +1 for a maximum.
double golden_extremum(const TreeModel& model, double a, double b, double sign) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = sign * w_of_lambda(model, x1), f2 = sign * w_of_lambda(model, x2);
  for (int it = 0; it < 200 && b - a > kBisectTol; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = sign * w_of_lambda(model, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = sign * w_of_lambda(model, x1);
    }
  }
  return 0.5 * (a + b);
}

std::complex<double> green_from(int q, std::complex<double> s, std::complex<double> w, std::complex<double> mu_minus,
                                int d) {
  return -s * std::pow(mu_minus, d) / (static_cast<double>(q + 1) * mu_minus - w);
}

double s_at(const EnergyData& e, double x) {
  const auto& b = e.basis;
  const double t = x / b.step();
  const double i = std::round(t);
  if (std::abs(t - i) < 1e-9 && i >= 0 && i <= b.grid_n) return b.S[static_cast<std::size_t>(i)];
  return solution_at(e.model.potential, e.lambda, e.model.grid_n, x).S;
}

void check_k(int k) {
  if (k < 1) throw std::invalid_argument("path order k must be >= 1");
}

}  // namespace

void TreeModel::validate() const {
  if (q < 1) throw ConfigError("model.q must be >= 1");
  if (!(length > 0.0) || !std::isfinite(length)) throw ConfigError("model.length must be positive");
  if (!std::isfinite(alpha)) throw ConfigError("model.alpha must be finite");
  if (std::abs(potential.length() - length) > 1e-12 * length)
    throw ConfigError("potential length does not match model.length");
  if (grid_n < 2 || grid_n % 2 != 0) throw ConfigError("run.grid_n must be even and >= 2");
}

double TreeModel::band_edge() const { return 2.0 * std::sqrt(static_cast<double>(q)); }

EdgeBasis model_basis(const TreeModel& model, double lambda) { return edge_basis(model.potential, lambda, model.grid_n); }

double w_from_basis(const TreeModel& model, const EdgeBasis& basis) {
  return (model.q + 1) * basis.c + model.alpha * basis.s;
}

double w_of_lambda(const TreeModel& model, double lambda) { return sample(model, lambda).w; }

std::complex<double> w_of_gamma(const TreeModel& model, std::complex<double> gamma) {
  const auto e = edge_endpoint(model.potential, gamma, model.grid_n);
  return static_cast<double>(model.q + 1) * e.c + model.alpha * e.s;
}

MuPair mu_pm_boundary(int q, double w, double s) {
  const double disc = 4.0 * q - w * w;
  if (!(disc > 0.0)) throw std::invalid_argument("mu_pm: |w| >= 2 sqrt(q), energy outside the AC spectrum");
  if (s == 0.0) throw std::invalid_argument("mu_pm: s = 0 (Dirichlet point)");
  const double re = w / (2.0 * q);
  const double im = std::sqrt(disc) / (2.0 * q);
  const std::complex<double> minus(re, s > 0.0 ? im : -im);
  return {std::conj(minus), minus};
}

MuPair mu_pm(const TreeModel& model, double lambda) {
  const auto v = sample(model, lambda);
  return mu_pm_boundary(model.q, v.w, v.s);
}

MuPair mu_pm_complex(int q, std::complex<double> w) {
  const auto root = std::sqrt(w * w - 4.0 * q);
  auto small = (w + root) / (2.0 * q);
  const auto other = (w - root) / (2.0 * q);
  if (std::abs(other) < std::abs(small)) small = other;
  return {1.0 / (static_cast<double>(q) * small), small};
}

std::string to_string(BandDirection d) { return d == BandDirection::increasing ? "increasing" : "decreasing"; }

int default_scan_n(double lo, double hi) {
  return std::max(100, static_cast<int>(std::ceil(2000.0 * (hi - lo))));
}

BandStructure find_bands(const TreeModel& model, double lo, double hi, int scan_n) {
  model.validate();
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) throw std::invalid_argument("find_bands: invalid range");
  BandStructure out;
  if (hi == lo) return out;
  const int n = scan_n > 0 ? scan_n : default_scan_n(lo, hi);
  if (n < 100) throw std::invalid_argument("find_bands: scan_n must be >= 100");

  const auto nn = static_cast<std::size_t>(n);
  std::vector<double> lam(nn + 1);
  for (std::size_t i = 0; i <= nn; ++i) lam[i] = i == nn ? hi : lo + (hi - lo) * static_cast<double>(i) / n;
  std::vector<Sample> samples(nn + 1);
  parallel_for(Execution::parallel, nn + 1, [&](std::size_t i) { samples[i] = sample(model, lam[i]); });

  const double edge2 = 4.0 * model.q;
  auto s_of = [&](double x) { return sample(model, x).s; };
  auto edge_of = [&](double x) {
    const double w = w_of_lambda(model, x);
    return w * w - edge2;
  };

  // Sign-change breakpoints are located by bisection; extrema by golden section.
  struct Found {
    double dirichlet = NAN, edge = NAN, extremum = NAN;
  };
  std::vector<Found> found(nn + 1);
  parallel_for(
      Execution::parallel, nn + 1,
      [&](std::size_t i) {
        Found& f = found[i];
        const double si = samples[i].s;
        const double ei = samples[i].w * samples[i].w - edge2;
        if (si == 0.0) f.dirichlet = lam[i];
        if (ei == 0.0) f.edge = lam[i];
        if (i == nn) return;
        const double sj = samples[i + 1].s;
        const double ej = samples[i + 1].w * samples[i + 1].w - edge2;
        if (si * sj < 0.0) f.dirichlet = bisect(s_of, lam[i], lam[i + 1], si);
        if (ei * ej < 0.0) f.edge = bisect(edge_of, lam[i], lam[i + 1], ei);
        if (i >= 1) {
          const double d0 = samples[i].w - samples[i - 1].w, d1 = samples[i + 1].w - samples[i].w;
          if (d0 * d1 < 0.0) f.extremum = golden_extremum(model, lam[i - 1], lam[i + 1], d0 > 0.0 ? 1.0 : -1.0);
        }
      },
      true);

  std::vector<double> precise, rough;
  for (const auto& f : found) {
    if (!std::isnan(f.dirichlet)) {
      out.dirichlet.push_back(f.dirichlet);
      precise.push_back(f.dirichlet);
    }
    if (!std::isnan(f.edge)) precise.push_back(f.edge);
    if (!std::isnan(f.extremum)) rough.push_back(f.extremum);
  }
  std::sort(out.dirichlet.begin(), out.dirichlet.end());
  out.dirichlet.erase(std::unique(out.dirichlet.begin(), out.dirichlet.end(),
                                  [](double a, double b) { return b - a <= kBisectTol; }),
                      out.dirichlet.end());

  std::vector<double> cuts = precise;
  for (double r : rough) {
    const bool shadowed =
        std::any_of(precise.begin(), precise.end(), [&](double p) { return std::abs(p - r) < kExtremumMerge; });
    if (!shadowed) cuts.push_back(r);
  }
  cuts.push_back(lo);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return b - a <= kBisectTol; }), cuts.end());
  cuts.front() = lo;
  cuts.back() = hi;

  const double edge = model.band_edge();
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double a = cuts[j], b = cuts[j + 1];
    if (b - a <= kBisectTol) continue;
    if (!(std::abs(w_of_lambda(model, 0.5 * (a + b))) < edge)) continue;

    // Scan points inside the piece plus the midpoints between them.
    std::vector<double> pts{a};
    std::vector<double> known{NAN};
    for (std::size_t i = 0; i <= nn; ++i)
      if (lam[i] > a && lam[i] < b) {
        pts.push_back(lam[i]);
        known.push_back(samples[i].w);
      }
    pts.push_back(b);
    known.push_back(NAN);
    std::vector<double> probe, wv;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      probe.push_back(pts[i]);
      wv.push_back(known[i]);
      if (i + 1 < pts.size()) {
        probe.push_back(0.5 * (pts[i] + pts[i + 1]));
        wv.push_back(NAN);
      }
    }
    parallel_for(Execution::parallel, probe.size(), [&](std::size_t i) {
      if (std::isnan(wv[i])) wv[i] = w_of_lambda(model, probe[i]);
    });
    const double dir = wv.back() > wv.front() ? 1.0 : -1.0;
    for (std::size_t i = 0; i + 1 < wv.size(); ++i)
      if ((wv[i + 1] - wv[i]) * dir < 0.0)
        throw NumericalError("find_bands: w is not monotone on [" + format_real(a) + ", " + format_real(b) +
                             "]; scan too coarse to separate features, raise run.scan_n");

    Band band;
    band.index = static_cast<int>(out.bands.size()) + 1;
    band.lo = a;
    band.hi = b;
    band.w_lo = wv.front();
    band.w_hi = wv.back();
    band.direction = dir > 0.0 ? BandDirection::increasing : BandDirection::decreasing;
    out.bands.push_back(band);
  }
  return out;
}

double invert_w_on_band(const TreeModel& model, const Band& band, double m) {
  if (!std::isfinite(m) || !(std::abs(m) < model.band_edge() - kBandEdgeGuard))
    throw std::invalid_argument("invert_w_on_band: m = " + format_real(m) + " is at or beyond the band edge 2 sqrt(q)");
  if (!(m > band.w_min() && m < band.w_max()))
    throw std::invalid_argument("invert_w_on_band: m = " + format_real(m) + " is outside w(band " +
                                std::to_string(band.index) + ")");
  auto f = [&](double x) { return w_of_lambda(model, x) - m; };
  std::uintmax_t max_iter = 200;
  const auto bracket = boost::math::tools::toms748_solve(f, band.lo, band.hi, band.w_lo - m, band.w_hi - m,
                                                         boost::math::tools::eps_tolerance<double>(44), max_iter);
  const double a = bracket.first, b = bracket.second;
  return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

double spherical(int q, double m, int d) {
  if (d < 0) throw std::invalid_argument("spherical: d must be >= 0");
  return spherical_table(q, m, d).back();
}

std::vector<double> spherical_table(int q, double m, int d_max) {
  std::vector<double> phi(static_cast<std::size_t>(std::max(d_max, 1)) + 1);
  phi[0] = 1.0;
  phi[1] = m / (q + 1);
  for (std::size_t d = 2; d < phi.size(); ++d) phi[d] = (m * phi[d - 1] - phi[d - 2]) / q;
  phi.resize(static_cast<std::size_t>(d_max) + 1);
  return phi;
}

double spherical_chebyshev(int q, double m, int d) {
  const double rq = std::sqrt(static_cast<double>(q));
  const double c = std::clamp(m / (2.0 * rq), -1.0, 1.0);
  const double theta = std::acos(c);
  const double p = std::cos(d * theta);
  const double sn = std::sin(theta);
  double qd;
  if (std::abs(sn) < 1e-12)
    qd = (c > 0.0 ? 1.0 : ((d % 2 == 0) ? 1.0 : -1.0)) * (d + 1);
  else
    qd = std::sin((d + 1) * theta) / sn;
  return std::pow(rq, -d) * (2.0 / (q + 1) * p + (q - 1.0) / (q + 1) * qd);
}

std::complex<double> green_adjacency(int q, std::complex<double> z, int d) {
  const auto mu = mu_pm_complex(q, z);
  return std::pow(mu.minus, d) / (static_cast<double>(q + 1) * mu.minus - z);
}

std::complex<double> green_adjacency_fixed_point(int q, std::complex<double> z, int d) {
  if (z.imag() == 0.0) throw std::invalid_argument("green_adjacency_fixed_point: z must be off the real axis");
  std::complex<double> branch = 0.0;
  bool converged = false;
  for (long it = 0; it < 10'000'000; ++it) {
    const auto next = 1.0 / (-z - static_cast<double>(q) * branch);
    const double change = std::abs(next - branch);
    branch = next;
    if (change <= 1e-15 * std::max(1.0, std::abs(branch))) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NumericalError("green_adjacency_fixed_point: iteration did not converge");
  const auto root = 1.0 / (-z - static_cast<double>(q + 1) * branch);
  return root * std::pow(-branch, d);
}

std::complex<double> green_tree_discrete(const TreeModel& model, std::complex<double> gamma, int d) {
  if (gamma.imag() == 0.0) throw std::invalid_argument("green_tree_discrete: gamma must be off the real axis");
  const auto e = edge_endpoint(model.potential, gamma, model.grid_n);
  const auto w = static_cast<double>(model.q + 1) * e.c + model.alpha * e.s;
  return green_from(model.q, e.s, w, mu_pm_complex(model.q, w).minus, d);
}

std::complex<double> green_tree_boundary(const TreeModel& model, double lambda, int d) {
  check_dirichlet_clearance(model, lambda);
  const auto v = sample(model, lambda);
  return green_from(model.q, v.s, v.w, mu_pm_boundary(model.q, v.w, v.s).minus, d);
}

void check_dirichlet_clearance(const TreeModel& model, double lambda) {
  const double s0 = sample(model, lambda).s;
  const double s1 = sample(model, lambda - kDirichletTol).s;
  const double s2 = sample(model, lambda + kDirichletTol).s;
  if (s0 == 0.0 || s1 * s2 <= 0.0 || s0 * s1 <= 0.0)
    throw NumericalError("lambda = " + format_real(lambda) + " lies within " + format_real(kDirichletTol) +
                         " of a Dirichlet point (s = 0)");
}

EnergyData energy_data(const TreeModel& model, double lambda) {
  EnergyData e;
  e.model = model;
  e.lambda = lambda;
  e.basis = model_basis(model, lambda);
  e.w = w_from_basis(model, e.basis);
  if (!(e.w * e.w < 4.0 * model.q))
    throw std::invalid_argument("lambda = " + format_real(lambda) + " is outside the AC spectrum (|w| >= 2 sqrt(q))");
  check_dirichlet_clearance(model, lambda);
  e.mu = mu_pm_boundary(model.q, e.w, e.basis.s);
  const std::vector<double> one(e.basis.S.size(), 1.0);
  const auto mom = observable_moments(e.basis, one);
  e.int_s2 = mom.c;
  e.int_cross = mom.b;
  const double s = e.basis.s;
  e.kappa = ((model.q + 1) * e.int_s2 + e.w * e.int_cross) / (s * s);
  return e;
}

double kappa(const TreeModel& model, double lambda) { return energy_data(model, lambda).kappa; }

double psi_density(const EnergyData& e, double x) {
  const double L = e.model.length;
  if (!(x >= 0.0 && x <= L)) throw std::invalid_argument("psi_density: x outside [0, L]");
  const double a = s_at(e, L - x), b = s_at(e, x), s = e.s();
  return (a * a + b * b + 2.0 * e.w / (e.model.q + 1) * a * b) / (e.kappa * s * s);
}

double psi_density(const TreeModel& model, double lambda, double x) { return psi_density(energy_data(model, lambda), x); }

std::vector<double> psi_density_grid(const EnergyData& e) {
  const auto& S = e.basis.S;
  const std::size_t n = S.size();
  const double s = e.s(), cross = 2.0 * e.w / (e.model.q + 1);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = S[n - 1 - i], b = S[i];
    out[i] = (a * a + b * b + cross * a * b) / (e.kappa * s * s);
  }
  return out;
}

namespace {

// Spherical weights (Phi(k), Phi(k-1), Phi(k-2)); for k = 1 the last is Phi(1).
std::array<double, 3> correlator_weights(const EnergyData& e, int k) {
  const auto phi = spherical_table(e.model.q, e.w, k);
  const double last = k >= 2 ? phi[static_cast<std::size_t>(k - 2)] : phi[1];
  return {phi[static_cast<std::size_t>(k)], phi[static_cast<std::size_t>(k - 1)], last};
}

double correlator_value(const std::array<double, 3>& wt, double pre, double lx, double x, double ly, double y) {
  // lx = S(L - x), x = S(x), likewise for y.
  return pre * (lx * y * wt[0] + (lx * ly + x * y) * wt[1] + x * ly * wt[2]);
}

}  // namespace

double psi_correlator(const EnergyData& e, int k, double x, double y) {
  check_k(k);
  const double L = e.model.length, s = e.s();
  const auto wt = correlator_weights(e, k);
  return correlator_value(wt, 1.0 / (2.0 * e.kappa * s * s), s_at(e, L - x), s_at(e, x), s_at(e, L - y), s_at(e, y));
}

double psi_correlator(const TreeModel& model, double lambda, int k, double x, double y) {
  return psi_correlator(energy_data(model, lambda), k, x, y);
}

double psi_correlator_green(const EnergyData& e, int k, double x, double y) {
  check_k(k);
  const int q = e.model.q;
  const double L = e.model.length, s = e.s();
  const auto mu = e.mu.minus;
  const auto g0 = green_from(q, s, e.w, mu, 0);
  if (k == 1) {
    const double lo = std::min(x, y), hi = std::max(x, y);
    const double a = s_at(e, L - lo), b = s_at(e, lo), c = s_at(e, L - hi), d = s_at(e, hi);
    const auto g = g0 / (s * s) * (a * c + b * d + mu * a * d + static_cast<double>(q) * e.mu.plus * b * c);
    return g.imag() / (2.0 * e.kappa * g0.imag());
  }
  auto im = [&](int d) { return green_from(q, s, e.w, mu, d).imag(); };
  const double lx = s_at(e, L - x), sx = s_at(e, x), ly = s_at(e, L - y), sy = s_at(e, y);
  const double sum = lx * sy * im(k) + lx * ly * im(k - 1) + sx * sy * im(k - 1) + sx * ly * im(k - 2);
  return sum / (2.0 * e.kappa * g0.imag() * s * s);
}

std::vector<double> psi_correlator_grid(const EnergyData& e, int k) {
  check_k(k);
  const auto& S = e.basis.S;
  const std::size_t n = S.size();
  const double s = e.s();
  const auto wt = correlator_weights(e, k);
  const double pre = 1.0 / (2.0 * e.kappa * s * s);
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = correlator_value(wt, pre, S[n - 1 - i], S[i], S[n - 1 - j], S[j]);
  return out;
}

CsvWriter bands_csv(const BandStructure& bs) {
  CsvWriter csv({"index", "lo", "hi", "w_lo", "w_hi", "direction"});
  for (const auto& b : bs.bands)
    csv.row({std::to_string(b.index), format_real(b.lo), format_real(b.hi), format_real(b.w_lo), format_real(b.w_hi),
             to_string(b.direction)});
  return csv;
}

CsvWriter dirichlet_csv(const BandStructure& bs) {
  CsvWriter csv({"index", "lambda"});
  for (std::size_t i = 0; i < bs.dirichlet.size(); ++i) csv.row({std::to_string(i + 1), format_real(bs.dirichlet[i])});
  return csv;
}

CsvWriter density_csv(const TreeModel& model, const BandStructure& bs) {
  CsvWriter csv({"lambda", "x", "psi"});
  for (const auto& b : bs.bands) {
    for (double frac : {0.25, 0.5, 0.75}) {
      const double lambda = b.lo + frac * b.width();
      const auto e = energy_data(model, lambda);
      const auto psi = psi_density_grid(e);
      const double h = e.basis.step();
      for (std::size_t i = 0; i < psi.size(); ++i)
        csv.row({format_real(lambda), format_real(h * static_cast<double>(i)), format_real(psi[i])});
    }
  }
  return csv;
}

}  // namespace qglab
