#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "yamabe/error.hpp"
#include "yamabe/quadrature.hpp"

using namespace yamabe;

namespace {
constexpr double kPi = 3.14159265358979323846;

double axis_weight_sum(const Axis& a) {
  return std::accumulate(a.weights.begin(), a.weights.end(), 0.0);
}
} // namespace

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
  const GaussLegendre& gl = gauss_legendre(12);
  REQUIRE(gl.x.size() == 12);
  double s0 = 0, s2 = 0, s22 = 0;
  for (std::size_t i = 0; i < gl.x.size(); ++i) {
    s0 += gl.w[i];
    s2 += gl.w[i] * gl.x[i] * gl.x[i];
    s22 += gl.w[i] * std::pow(gl.x[i], 22);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(s22 == doctest::Approx(2.0 / 23.0).epsilon(1e-13)); // degree 22 = 2*12-2 is still exact
  CHECK_THROWS_AS((void)gauss_legendre(0), error);
}

TEST_CASE("graded axes partition the interval") {
  const Axis one = graded_axis(0.0, kPi, 1e-4, 10, false);
  CHECK(axis_weight_sum(one) == doctest::Approx(kPi).epsilon(1e-13));
  for (std::size_t i = 1; i < one.nodes.size(); ++i) CHECK(one.nodes[i] > one.nodes[i - 1]);

  const Axis two = graded_axis(0.0, 1.0, 1e-3, 8, true);
  CHECK(axis_weight_sum(two) == doctest::Approx(1.0).epsilon(1e-13));
  // two-sided grading is symmetric about the midpoint
  const std::size_t N = two.nodes.size();
  for (std::size_t i = 0; i < N; ++i) {
    CHECK(two.nodes[i] == doctest::Approx(1.0 - two.nodes[N - 1 - i]).epsilon(1e-12));
    CHECK(two.weights[i] == doctest::Approx(two.weights[N - 1 - i]).epsilon(1e-12));
  }
}

TEST_CASE("zonal rule reproduces sphere volumes") {
  const QuadratureRule rule = make_rule(QuadratureRule::Kind::zonal, 48);
  for (int n = 3; n <= 8; ++n) {
    CHECK(integrate_zonal(n, [](double) { return 1.0; }, rule) ==
          doctest::Approx(sphere_volume(n)).epsilon(1e-12));
  }
  // odd zonal harmonic integrates to zero
  CHECK(integrate_zonal(3, [](double r) { return std::cos(r); }, rule) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("non-finite integrand values are diagnosed") {
  const QuadratureRule rule = make_rule(QuadratureRule::Kind::zonal, 32);
  try {
    (void)integrate_zonal(3, [](double r) { return r < 1.0 ? 1.0 : std::nan(""); }, rule);
    FAIL("expected a numerical error");
  } catch (const error& e) {
    CHECK(e.code() == errc::numerical);
    CHECK(std::string(e.what()).find("integrate_zonal") != std::string::npos);
  }
}

TEST_CASE("bizonal rule collapses to the zonal rule at zero separation") {
  const QuadratureRule rule = make_rule(QuadratureRule::Kind::bizonal, 48);
  auto f = [](double r, double) { return std::exp(std::cos(r)); };
  const QuadratureRule zr = make_rule(QuadratureRule::Kind::zonal, 48);
  const double z = integrate_zonal(4, [](double r) { return std::exp(std::cos(r)); }, zr);
  CHECK(integrate_bizonal(4, 0.0, f, rule) == doctest::Approx(z).epsilon(1e-11));
  for (double theta : {0.3, kPi / 2, kPi - 1e-13}) {
    CHECK(integrate_bizonal(4, theta, [](double, double) { return 1.0; }, rule) ==
          doctest::Approx(sphere_volume(4)).epsilon(1e-11));
  }
}

TEST_CASE("independent rules agree on a smooth integrand") {
  const int n = 3;
  auto zonal_f = [](double r) { return std::exp(std::cos(r)); };
  auto point_f = [](const SpherePoint& p) { return std::exp(p.c[0]); };

  const double z =
      integrate_zonal(n, zonal_f, make_rule(QuadratureRule::Kind::zonal, 48));
  const double g = integrate_product_grid(
      n, point_f, make_rule(QuadratureRule::Kind::product_grid, 40));
  CHECK(g == doctest::Approx(z).epsilon(1e-9));

  const McResult mc =
      integrate_mc(n, point_f, make_rule(QuadratureRule::Kind::monte_carlo, 200000, 11));
  CHECK(std::abs(mc.estimate - z) < 3.0 * mc.std_error);
  CHECK(mc.std_error < 0.05);
}

TEST_CASE("ball and complement partition the zonal integral") {
  const QuadratureRule rule = make_rule(QuadratureRule::Kind::zonal, 48);
  auto f = [](double r) { return 1.0 / (1.5 - std::cos(r)); };
  const double whole = integrate_zonal(5, f, rule);
  for (double delta : {0.05, 0.7, 2.9}) {
    const double in = ball_restricted_zonal(5, delta, f, rule, false);
    const double out = ball_restricted_zonal(5, delta, f, rule, true);
    CHECK(in + out == doctest::Approx(whole).epsilon(1e-11));
    CHECK(in > 0.0);
    CHECK(out > 0.0);
  }
  CHECK_THROWS_AS((void)ball_restricted_zonal(5, -0.1, f, rule), error);
}

TEST_CASE("Monte Carlo sampling is reproducible by seed") {
  auto f = [](const SpherePoint& p) { return p.c[0] * p.c[0]; };
  const QuadratureRule a = make_rule(QuadratureRule::Kind::monte_carlo, 50000, 42);
  const McResult r1 = integrate_mc(3, f, a);
  const McResult r2 = integrate_mc(3, f, a);
  CHECK(r1.estimate == r2.estimate); // bitwise: same seed, same stream
  CHECK(r1.std_error == r2.std_error);

  const QuadratureRule b = make_rule(QuadratureRule::Kind::monte_carlo, 50000, 43);
  CHECK(integrate_mc(3, f, b).estimate != r1.estimate);

  // int x0^2 over S^3 is vol(S^3)/4
  CHECK(r1.estimate == doctest::Approx(sphere_volume(3) / 4.0).epsilon(0.01));

  CHECK_THROWS_AS(
      (void)integrate_mc(3, [](const SpherePoint&) { return std::nan(""); }, b), error);
}

TEST_CASE("rule construction is validated") {
  CHECK_THROWS_AS((void)make_rule(QuadratureRule::Kind::zonal, 0), error);
  CHECK_THROWS_AS((void)make_rule(QuadratureRule::Kind::monte_carlo, -5), error);
  CHECK_THROWS_AS(
      (void)integrate_product_grid(6, [](const SpherePoint&) { return 1.0; },
                                   make_rule(QuadratureRule::Kind::product_grid, 20)),
      error);
}

TEST_CASE("biplanar grids carry the full sphere volume") {
  for (int n : {3, 4, 5, 7}) {
    for (int m = 1; m <= 9; ++m) {
      for (double beta : {1.001, 1.5}) {
        const BiplanarGrid g = make_biplanar_grid(n, m, beta, 40);
        REQUIRE(g.alpha.nodes.size() > 0);
        REQUIRE(g.gamma.nodes.size() > 0);
        REQUIRE(g.eta.nodes.size() > 0);
        if (n == 3) {
          CHECK(g.phi.nodes.empty());
        } else {
          REQUIRE(g.phi.nodes.size() > 0);
        }
        // recompute the represented volume from the axes alone
        const double wphi = (n == 3) ? 1.0 : axis_weight_sum(g.phi);
        const double veta = axis_weight_sum(g.eta);
        const double valpha = axis_weight_sum(g.alpha);
        const double vgamma = axis_weight_sum(g.gamma);
        const double vol = g.mult * g.fiber * wphi * veta * valpha * vgamma;
        CHECK(vol == doctest::Approx(sphere_volume(n)).epsilon(1e-10));
        CHECK(g.mult == doctest::Approx(4.0 * m * m).epsilon(1e-15));
      }
    }
  }
  CHECK_THROWS_AS((void)make_biplanar_grid(2, 4, 1.5, 40), error);
  CHECK_THROWS_AS((void)make_biplanar_grid(4, 4, 0.99, 40), error);
}
