#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "yamabe/bubble.hpp"
#include "yamabe/error.hpp"
#include "yamabe/group.hpp"
#include "yamabe/quadrature.hpp"
#include "yamabe/sphere.hpp"

using namespace yamabe;

namespace {
SpherePoint base_point(int n) {
  std::vector<double> e0(n + 1, 0.0);
  e0[0] = 1.0;
  return SpherePoint{e0};
}

SpherePoint random_point(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<double> c(n + 1);
  for (double& v : c) v = gauss(rng);
  return SpherePoint{c};
}
} // namespace

TEST_CASE("peak height at the center") {
  // u(center) = ((beta+1)/(beta-1))^{(n-2)/4}
  const Bubble b3{3, base_point(3), 2.0};
  CHECK(bubble_value(b3, 0.0) == doctest::Approx(std::pow(3.0, 0.25)).epsilon(1e-14));
  const Bubble b5{5, base_point(5), 1.5};
  CHECK(bubble_value(b5, 0.0) == doctest::Approx(std::pow(5.0, 0.75)).epsilon(1e-14));
}

TEST_CASE("large beta flattens the profile to one") {
  const Bubble b{4, base_point(4), 1e6};
  CHECK(std::abs(bubble_value(b, 1.0) - 1.0) < 2e-6);
  CHECK(std::abs(bubble_value(b, 3.0) - 1.0) < 4e-6);
}

TEST_CASE("zonal and ambient evaluations coincide") {
  std::mt19937_64 rng(31);
  const Bubble b{5, random_point(5, rng), 1.7};
  for (int k = 0; k < 50; ++k) {
    const SpherePoint x = random_point(5, rng);
    CHECK(bubble_value(b, x) ==
          doctest::Approx(bubble_value(b, geodesic_distance(b.center, x))).epsilon(1e-13));
  }
}

TEST_CASE("radial derivative against central differences") {
  for (int n : {3, 4, 6}) {
    const Bubble b{n, base_point(n), 1.25};
    for (double r : {0.05, 0.4, 1.2, 2.5, 3.0}) {
      const double h = 1e-6;
      const double fd = (bubble_value(b, r + h) - bubble_value(b, r - h)) / (2 * h);
      CHECK(bubble_radial_derivative(b, r) == doctest::Approx(fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("normalized mass for every concentration") {
  const QuadratureRule rule = make_rule(QuadratureRule::Kind::zonal, 48);
  for (int n : {3, 4, 5}) {
    const double two_star = 2.0 * n / (n - 2.0);
    for (double beta : {1.5, 3.0, 10.0}) {
      const Bubble b{n, base_point(n), beta};
      const double mass = integrate_zonal(
          n, [&](double r) { return std::pow(bubble_value(b, r), two_star); }, rule,
          0.5 * std::sqrt(beta - 1.0));
      CHECK(mass == doctest::Approx(sphere_volume(n)).epsilon(1e-9));
    }
    // concentrated bubble: the graded ladder still resolves the peak
    const Bubble sharp{n, base_point(n), 1.01};
    const double mass = integrate_zonal(
        n, [&](double r) { return std::pow(bubble_value(sharp, r), two_star); }, rule,
        0.5 * std::sqrt(0.01));
    CHECK(mass == doctest::Approx(sphere_volume(n)).epsilon(1e-6));
  }
}

TEST_CASE("conformal energy identity") {
  // int (|u'|^2 + a_n u^2) dV = a_n vol(S^n) for every beta
  const QuadratureRule rule = make_rule(QuadratureRule::Kind::zonal, 48);
  for (int n : {3, 4, 5}) {
    const SphereConstants cs = make_constants(n);
    const Bubble b{n, base_point(n), 2.2};
    const double h1 = integrate_zonal(
        n,
        [&](double r) {
          const double du = bubble_radial_derivative(b, r);
          const double u = bubble_value(b, r);
          return du * du + cs.a_n * u * u;
        },
        rule, 0.5 * std::sqrt(1.2));
    CHECK(h1 == doctest::Approx(cs.a_n * sphere_volume(n)).epsilon(1e-9));
  }
}

TEST_CASE("identity report passes honestly and fails under tampering") {
  const QuadratureRule rule = make_rule(QuadratureRule::Kind::zonal, 48);
  for (int n : {3, 4, 5}) {
    const SolutionIdentityReport ok = solution_identity_check(n, 2.0, rule);
    CHECK(ok.pass);
    CHECK(ok.mass == doctest::Approx(ok.mass_expected).epsilon(1e-9));
    CHECK(ok.h1 == doctest::Approx(ok.h1_expected).epsilon(1e-9));

    const SolutionIdentityReport bad = solution_identity_check(n, 2.0, rule, 1.001);
    CHECK_FALSE(bad.pass);
  }
}

TEST_CASE("superposition vanishes on the invariant axis") {
  const int n = 4, m = 4;
  const SymmetryGroup G = build_gamma_m(n, m);
  const NodalAnsatz w{n, 1.3, orbit(G, base_point(n))};
  CHECK(std::abs(w.value(SpherePoint{std::vector<double>{0, 0, 0, 0, 1}})) < 1e-13);
  CHECK(std::abs(w.value(SpherePoint{std::vector<double>{0, 0, 0, 0, -1}})) < 1e-13);
}

TEST_CASE("sign structure near the two center blocks") {
  const int n = 3;
  for (int m : {2, 4, 6}) {
    const SymmetryGroup G = build_gamma_m(n, m);
    const SignedOrbit orb = orbit(G, base_point(n));
    const NodalAnsatz w{n, 1.01, orb};
    CHECK(w.value(orb.plus_points[0]) > 1.0);   // dominated by the positive peak
    CHECK(w.value(orb.minus_points[0]) < -1.0); // dominated by the negative peak
  }
}

TEST_CASE("tangential gradient against finite differences along great circles") {
  std::mt19937_64 rng(77);
  const int n = 4, m = 4;
  const SymmetryGroup G = build_gamma_m(n, m);
  const NodalAnsatz w{n, 1.4, orbit(G, base_point(n))};

  for (int trial = 0; trial < 12; ++trial) {
    const SpherePoint x = random_point(n, rng);

    // orthonormal tangent basis by Gram-Schmidt against x
    std::vector<std::vector<double>> basis;
    while (static_cast<int>(basis.size()) < n) {
      std::vector<double> v(n + 1);
      std::normal_distribution<double> gauss;
      for (double& c : v) c = gauss(rng);
      double dx = 0;
      for (int i = 0; i <= n; ++i) dx += v[i] * x.c[i];
      for (int i = 0; i <= n; ++i) v[i] -= dx * x.c[i];
      for (const auto& b : basis) {
        double db = 0;
        for (int i = 0; i <= n; ++i) db += v[i] * b[i];
        for (int i = 0; i <= n; ++i) v[i] -= db * b[i];
      }
      double nv = 0;
      for (double c : v) nv += c * c;
      nv = std::sqrt(nv);
      if (nv < 1e-6) continue;
      for (double& c : v) c /= nv;
      basis.push_back(v);
    }

    // derivative along the great circle t -> cos(t) x + sin(t) v
    double grad_sq_fd = 0.0;
    const double h = 1e-5;
    for (const auto& v : basis) {
      auto at = [&](double t) {
        std::vector<double> c(n + 1);
        for (int i = 0; i <= n; ++i) c[i] = std::cos(t) * x.c[i] + std::sin(t) * v[i];
        return w.value(SpherePoint{c});
      };
      const double d = (at(h) - at(-h)) / (2 * h);
      grad_sq_fd += d * d;
    }
    CHECK(w.gradient_norm_sq(x) == doctest::Approx(grad_sq_fd).epsilon(1e-6));
  }
}

TEST_CASE("construction is validated") {
  CHECK_THROWS_AS((Bubble{2, base_point(2), 1.5}), error);
  CHECK_THROWS_AS((Bubble{3, base_point(3), 1.0}), error);
  CHECK_THROWS_AS((Bubble{3, base_point(4), 1.5}), error);

  const SymmetryGroup G = build_gamma_m(4, 3);
  const SignedOrbit fixed = orbit(G, SpherePoint{std::vector<double>{0, 0, 0, 0, 1}});
  CHECK_THROWS_AS((NodalAnsatz{4, 1.5, fixed}), error);

  const NodalAnsatz w{4, 1.5, orbit(G, base_point(4))};
  CHECK_THROWS_AS((void)w.value(base_point(5)), error);
}
