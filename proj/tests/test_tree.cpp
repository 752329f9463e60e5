#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "qglab/errors.hpp"
#include "qglab/tree.hpp"

using namespace qglab;

namespace {

TreeModel make_model(int q, double amp, double alpha, int grid_n = 256) {
  TreeModel m;
  m.q = q;
  m.alpha = alpha;
  m.potential = amp == 0.0 ? Potential::zero(1.0) : Potential::cosine(1.0, amp);
  m.grid_n = grid_n;
  return m;
}

}  // namespace

TEST_CASE("free bands of the binary tree in closed form") {
  const auto bs = find_bands(make_model(2, 0, 0), 0.0, 45.0);
  REQUIRE(bs.bands.size() == 3);
  const double theta = std::acos(2.0 * std::sqrt(2.0) / 3.0);
  CHECK(std::abs(bs.bands[0].lo - theta * theta) < 1e-9);
  CHECK(std::abs(bs.bands[0].hi - (std::numbers::pi - theta) * (std::numbers::pi - theta)) < 1e-9);
  CHECK(std::abs(bs.bands[1].lo - (std::numbers::pi + theta) * (std::numbers::pi + theta)) < 1e-9);
  CHECK(bs.bands[0].direction == BandDirection::decreasing);
  CHECK(bs.bands[1].direction == BandDirection::increasing);
  CHECK(bs.bands[2].hi == 45.0);  // cut by the range
  REQUIRE(bs.dirichlet.size() == 2);
  CHECK(std::abs(bs.dirichlet[0] - std::numbers::pi * std::numbers::pi) < 1e-9);
  CHECK(std::abs(bs.dirichlet[1] - 4 * std::numbers::pi * std::numbers::pi) < 1e-9);
  CHECK(find_bands(make_model(2, 0, 0), 5.0, 5.0).bands.empty());
}

TEST_CASE("cycle bands touch at the Dirichlet points") {
  const auto bs = find_bands(make_model(1, 0, 0), 0.0, 12.0);
  REQUIRE(bs.bands.size() == 2);
  CHECK(bs.bands[0].lo == doctest::Approx(0.0));
  CHECK(bs.bands[0].hi == doctest::Approx(std::numbers::pi * std::numbers::pi).epsilon(1e-10));
}

TEST_CASE("band inversion round trip and coupling shifts") {
  for (const auto& m : {make_model(2, 0, 0), make_model(2, 1.0, 0.5), make_model(3, -1.0, -0.3)}) {
    const auto bs = find_bands(m, 0.0, 45.0);
    REQUIRE(!bs.bands.empty());
    for (const auto& b : bs.bands)
      for (double t : {0.1, 0.5, 0.9}) {
        const double target = b.w_min() + t * (b.w_max() - b.w_min());
        const double lambda = invert_w_on_band(m, b, target);
        CHECK(lambda >= b.lo);
        CHECK(lambda <= b.hi);
        CHECK(std::abs(w_of_lambda(m, lambda) - target) < 1e-10);
      }
  }
}

TEST_CASE("mu roots") {
  const auto m = make_model(2, 1.0, 0.5);
  for (double lambda : {1.0, 3.0, 6.0}) {
    const double w = w_of_lambda(m, lambda);
    if (w * w >= 8.0) continue;
    const auto mu = mu_pm(m, lambda);
    for (auto r : {mu.plus, mu.minus}) CHECK(std::abs(2.0 * r * r - w * r + 1.0) < 1e-14);
    CHECK(std::abs(std::norm(mu.minus) - 0.5) < 1e-14);
    CHECK(std::signbit(mu.minus.imag()) == std::signbit(model_basis(m, lambda).s));
  }
}

TEST_CASE("spherical functions: recursion against the Chebyshev form") {
  for (int q : {1, 2, 5})
    for (double m : {-1.7, 0.0, 0.4, 1.9})
      for (int d = 0; d <= 8; ++d) CHECK(std::abs(spherical(q, m, d) - spherical_chebyshev(q, m, d)) < 1e-12);
  CHECK(spherical(2, 1.5, 1) == doctest::Approx(0.5));
}

TEST_CASE("adjacency resolvent closed form against the fixed point") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const std::complex<double> z(oracle::uniform(rng, -4, 4), oracle::uniform(rng, 0.1, 2));
    for (int d = 0; d <= 6; ++d)
      CHECK(std::abs(green_adjacency(2, z, d) - green_adjacency_fixed_point(2, z, d)) < 1e-12);
  }
}

TEST_CASE("metric tree Green function is the rescaled adjacency resolvent") {
  const auto m = make_model(2, 1.0, 0.5);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 10; ++i) {
    const std::complex<double> g(oracle::uniform(rng, 0.5, 40), oracle::uniform(rng, 0.2, 2));
    const auto e = edge_endpoint(m.potential, g, m.grid_n);
    const auto w = 3.0 * e.c + 0.5 * e.s;
    for (int d = 0; d <= 6; ++d)
      CHECK(std::abs(green_tree_discrete(m, g, d) + e.s * green_adjacency_fixed_point(2, w, d)) < 1e-10);
  }
  // The boundary value on a band is the limit from the upper half plane.
  const double lambda = 3.0;
  const auto limit = green_tree_discrete(m, {lambda, 1e-7}, 2);
  CHECK(std::abs(green_tree_boundary(m, lambda, 2) - limit) < 1e-5);
}

TEST_CASE("spherical ratio of boundary Green functions") {
  const auto m = make_model(2, 0.0, 0.0);
  const auto band = find_bands(m, 0.0, 10.0).bands.at(0);
  for (int i = 1; i < 10; ++i) {
    const double lambda = band.lo + i / 10.0 * band.width();
    const double w = w_of_lambda(m, lambda);
    const double im0 = green_tree_boundary(m, lambda, 0).imag();
    for (int d = 1; d <= 6; ++d)
      CHECK(std::abs(green_tree_boundary(m, lambda, d).imag() / im0 - spherical(2, w, d)) < 1e-10);
  }
}

TEST_CASE("kappa for the free model") {
  const auto m = make_model(2, 0, 0, 512);
  for (double lambda : {1.0, 4.0, 20.0}) {
    const double k = std::sqrt(lambda);
    const double s = std::sin(k) / k;
    const double s2 = (0.5 - std::sin(2 * k) / (4 * k)) / lambda;
    const double cross = (std::sin(k) / (2 * k) - std::cos(k) / 2) / lambda;
    if (std::pow(3 * std::cos(k), 2) >= 8) continue;
    CHECK(kappa(m, lambda) == doctest::Approx((3 * s2 + 3 * std::cos(k) * cross) / (s * s)).epsilon(1e-10));
  }
}

TEST_CASE("limit density and correlator identities") {
  for (double amp : {0.0, 1.0})
    for (double alpha : {0.0, 0.5}) {
      const auto m = make_model(2, amp, alpha);
      const auto band = find_bands(m, 0.0, 10.0).bands.at(0);
      for (int i = 1; i < 8; ++i) {
        const auto e = energy_data(m, band.lo + i / 8.0 * band.width());
        const auto grid = psi_density_grid(e);
        CHECK(std::abs(oracle::quadrature(grid, 1.0) - 2.0 / 3.0) < 1e-8);
        for (double x : {0.0, 0.125, 0.5, 0.75}) {
          CHECK(std::abs(2 * psi_correlator(e, 1, x, x) - psi_density(e, x)) < 1e-10);
          if (amp == 0.0 && alpha == 0.0) CHECK(std::abs(psi_density(e, x) - 2.0 / 3.0) < 1e-10);
        }
        for (int k = 1; k <= 4; ++k)
          for (auto [x, y] : {std::pair{0.2, 0.7}, std::pair{0.9, 0.1}})
            CHECK(std::abs(psi_correlator(e, k, x, y) - psi_correlator_green(e, k, x, y)) < 1e-10);
        const auto table = psi_correlator_grid(e, 2);
        CHECK(table[3 * 257 + 100] == doctest::Approx(psi_correlator(e, 2, 3.0 / 256, 100.0 / 256)).epsilon(1e-12));
      }
    }
}

TEST_CASE("energy_data guards") {
  const auto m = make_model(2, 0, 0);
  CHECK_THROWS_AS(energy_data(m, 9.0), std::invalid_argument);  // |w| > 2 sqrt(q)
  auto q1 = make_model(1, 0, 0);
  CHECK_THROWS_AS(energy_data(q1, std::numbers::pi * std::numbers::pi), std::invalid_argument);
  CHECK_THROWS_AS(check_dirichlet_clearance(m, std::numbers::pi * std::numbers::pi + 1e-8), NumericalError);
}

TEST_CASE("band CSV artifacts") {
  const auto m = make_model(2, 0, 0);
  const auto bs = find_bands(m, 0.0, 45.0);
  const auto text = bands_csv(bs).text();
  CHECK(text.rfind("index,lo,hi,w_lo,w_hi,direction\n", 0) == 0);
  CHECK(dirichlet_csv(bs).text().rfind("index,lambda\n", 0) == 0);
  CHECK(density_csv(m, bs).text().rfind("lambda,x,psi\n", 0) == 0);
}
