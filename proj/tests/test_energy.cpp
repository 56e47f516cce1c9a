#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "yamabe/bubble.hpp"
#include "yamabe/criterion.hpp"
#include "yamabe/energy.hpp"
#include "yamabe/error.hpp"
#include "yamabe/group.hpp"
#include "yamabe/quadrature.hpp"

using namespace yamabe;

namespace {
constexpr double kPi = 3.14159265358979323846;

QuadratureRule grid_rule() { return make_rule(QuadratureRule::Kind::biplanar, 48); }
QuadratureRule pair_rule() { return make_rule(QuadratureRule::Kind::bizonal, 48); }
} // namespace

TEST_CASE("pair integral at zero separation is the bubble mass") {
  for (int n : {3, 4, 5, 7}) {
    CHECK(pair_integral(n, 1.5, 0.0, pair_rule()) ==
          doctest::Approx(sphere_volume(n)).epsilon(1e-10));
  }
}

TEST_CASE("pair integral decays with the separation angle") {
  const double beta = 1.05;
  double prev = pair_integral(4, beta, 0.0, pair_rule());
  for (double theta : {0.2, 0.7, 1.2, kPi / 2}) {
    const double cur = pair_integral(4, beta, theta, pair_rule());
    CHECK(cur < prev);
    CHECK(cur > 0.0);
    prev = cur;
  }
}

TEST_CASE("two-center pairing identity against the direct grid") {
  // m = 1: one positive and one negative bubble on orthogonal axes,
  // <w,w> = a_n (2 vol - 2 I(pi/2))
  for (int n : {3, 4, 5}) {
    const double beta = 1.2;
    const double a_n = n * (n - 2) / 4.0;
    const double expected =
        a_n * (2.0 * sphere_volume(n) - 2.0 * pair_integral(n, beta, kPi / 2, pair_rule()));
    CHECK(h1_norm_sq_pairing(n, 1, beta, pair_rule()) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(h1_norm_sq_direct(n, 1, beta, grid_rule()) ==
          doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("reference energy reports at the certified operating points") {
  const std::vector<double> grid = default_beta_grid();

  const EnergyReport r39 = energy_report(3, 9, grid[5], grid_rule());
  CHECK(r39.h1_norm_sq == doctest::Approx(277.726328371).epsilon(1e-8));
  CHECK(r39.lp_mass == doctest::Approx(466.33371558).epsilon(1e-8));
  CHECK(r39.energy == doctest::Approx(82.4945551079).epsilon(1e-8));
  CHECK(r39.bound == doctest::Approx(88.8264396098).epsilon(1e-10));
  CHECK((r39.bound - r39.energy) / r39.bound ==
        doctest::Approx(7.128378138e-2).epsilon(1e-6));
  CHECK(r39.certified);
  CHECK(r39.agreement < 1e-12);

  const EnergyReport r47 = energy_report(4, 7, grid[6], grid_rule());
  CHECK(r47.h1_norm_sq == doctest::Approx(765.476929397).epsilon(1e-8));
  CHECK(r47.lp_mass == doctest::Approx(428.229428686).epsilon(1e-8));
  CHECK((r47.bound - r47.energy) / r47.bound ==
        doctest::Approx(7.160840920e-2).epsilon(1e-6));
  CHECK(r47.certified);
  CHECK(r47.agreement < 1e-12);

  const EnergyReport r75 = energy_report(7, 5, grid[6], grid_rule());
  CHECK((r75.bound - r75.energy) / r75.bound ==
        doctest::Approx(1.056990549e-3).epsilon(1e-5));
  CHECK(r75.certified);
}

TEST_CASE("Nehari scaling identities under randomized inputs") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> uh(0.5, 5000.0), ul(0.5, 5000.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const double h1 = uh(rng), lp = ul(rng);
    const double a_n = n * (n - 2) / 4.0;
    const double two_star = 2.0 * n / (n - 2.0);
    const NehariScale s = nehari_scale(n, h1, lp);

    // defining property: t^2 h1 = a_n t^{2*} lp
    CHECK(s.t * s.t * h1 ==
          doctest::Approx(a_n * std::pow(s.t, two_star) * lp).epsilon(1e-10));
    // energy at the scaled point
    CHECK(s.energy == doctest::Approx(std::pow(s.quotient, n / 2.0) / n).epsilon(1e-12));
    // the quotient is invariant under the natural scaling of both fields
    for (double lam : {0.5, 2.0, 10.0}) {
      const NehariScale sl =
          nehari_scale(n, lam * lam * h1, std::pow(lam, two_star) * lp);
      CHECK(sl.quotient == doctest::Approx(s.quotient).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS((void)nehari_scale(3, -1.0, 2.0), error);
  CHECK_THROWS_AS((void)nehari_scale(3, 1.0, 0.0), error);
}

TEST_CASE("certification sweeps separate passing and failing configurations") {
  const std::vector<double> grid = default_beta_grid();
  REQUIRE(grid.size() == 13);
  CHECK(grid.front() == doctest::Approx(1.001).epsilon(1e-12));
  CHECK(grid.back() == doctest::Approx(1.5).epsilon(1e-12));

  const SweepResult pass = certification_sweep(3, 9, grid, grid_rule());
  CHECK(pass.any_certified);
  CHECK(pass.best_margin > 0.07);
  CHECK(pass.deficit_slope > 0.0); // the criterion constant is positive here

  const SweepResult fail = certification_sweep(3, 8, grid, grid_rule());
  CHECK_FALSE(fail.any_certified);
  CHECK(fail.best_margin < 0.0);
  CHECK(fail.deficit_slope < 0.0); // and negative here
}

TEST_CASE("ball concentration of the critical-power mass") {
  const QuadratureRule zonal = make_rule(QuadratureRule::Kind::zonal, 48);
  const std::vector<double> eps = {1e-2, 1e-3, 1e-4};

  const ConvergenceReport c3 = ball_concentration_convergence(3, eps, 0.5, zonal);
  REQUIRE(c3.rows.size() == 3);
  CHECK(c3.rows[1].ratio == doctest::Approx(0.987151809).epsilon(2e-6));
  CHECK(c3.rows[2].ratio == doctest::Approx(0.998619081).epsilon(2e-6));
  CHECK(c3.complement_variation == doctest::Approx(1.1071608).epsilon(2e-3));

  const ConvergenceReport c4 = ball_concentration_convergence(4, eps, 0.5, zonal);
  CHECK(c4.rows[1].ratio == doctest::Approx(0.98126423).epsilon(2e-6));
  CHECK(c4.complement_variation == doctest::Approx(1.13457268).epsilon(2e-3));

  const ConvergenceReport c5 = ball_concentration_convergence(5, eps, 0.5, zonal);
  CHECK(c5.rows[1].ratio == doctest::Approx(0.974828163).epsilon(2e-6));
  CHECK(c5.complement_variation == doctest::Approx(1.1631626).epsilon(2e-3));

  // the ratio climbs toward 1 under concentration, the scaled complement stays bounded
  for (const ConvergenceReport* c : {&c3, &c4, &c5}) {
    CHECK(c->rows[0].ratio < c->rows[1].ratio);
    CHECK(c->rows[1].ratio < c->rows[2].ratio);
    CHECK(c->rows[2].ratio < 1.0);
    CHECK(c->complement_variation < 2.0);
  }
}

TEST_CASE("expansion slope of the norm matches its predicted limit") {
  const SlopeReport s39 = norm_expansion_slope(3, 9, pair_rule());
  CHECK(s39.rel_error < 2e-3);
  CHECK(s39.qhat > 0.9);
  CHECK(s39.qhat < 1.15);
  CHECK(s39.predicted > 0.0); // positive interaction constant

  const SlopeReport s47 = norm_expansion_slope(4, 7, pair_rule());
  CHECK(s47.rel_error < 2e-3);
  CHECK(s47.qhat > 0.9);
  CHECK(s47.qhat < 1.15);
}

TEST_CASE("Richardson extrapolation recovers synthetic limits") {
  const double L = 5.5, c = -0.3, q = 1.7, h = 0.01;
  const double s1 = L + c * std::pow(h, q);
  const double s2 = L + c * std::pow(2 * h, q);
  const double s4 = L + c * std::pow(4 * h, q);
  const Richardson r = richardson_limit(s1, s2, s4);
  CHECK(r.qhat == doctest::Approx(q).epsilon(1e-10));
  CHECK(r.limit == doctest::Approx(L).epsilon(1e-12));

  CHECK_THROWS_AS((void)richardson_limit(1.0, 2.0, 1.5), error);
}

TEST_CASE("grid mass cross-checked by Monte Carlo") {
  const int n = 3, m = 5;
  const double beta = 1.1;
  const DirectFields f = direct_fields(n, m, beta, grid_rule());

  const SymmetryGroup G = build_gamma_m(n, m);
  std::vector<double> e0(n + 1, 0.0);
  e0[0] = 1.0;
  const NodalAnsatz w{n, beta, orbit(G, SpherePoint{e0})};
  const double two_star = 2.0 * n / (n - 2.0);
  const McResult mc = integrate_mc(
      n,
      [&](const SpherePoint& p) { return std::pow(std::abs(w.value(p)), two_star); },
      make_rule(QuadratureRule::Kind::monte_carlo, 400000, 7));
  CHECK(std::abs(mc.estimate - f.lp_mass) < 3.0 * mc.std_error);
}

TEST_CASE("input validation of the energy layer") {
  CHECK_THROWS_AS((void)pair_integral(2, 1.5, 0.3, pair_rule()), error);
  CHECK_THROWS_AS((void)pair_integral(3, 1.0, 0.3, pair_rule()), error);
  CHECK_THROWS_AS((void)h1_norm_sq_pairing(3, 0, 1.5, pair_rule()), error);
  CHECK_THROWS_AS((void)energy_report(3, 9, 0.9, grid_rule()), error);
  CHECK_THROWS_AS(
      (void)certification_sweep(3, 9, std::vector<double>{}, grid_rule()), error);
  CHECK_THROWS_AS(
      (void)ball_concentration_convergence(3, {1e-2}, -0.5,
                                           make_rule(QuadratureRule::Kind::zonal, 48)),
      error);
}
