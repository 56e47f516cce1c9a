#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "yamabe/sphere.hpp"

namespace yamabe {

struct QuadratureRule {
  enum class Kind { zonal, bizonal, monte_carlo, product_grid, biplanar };
  Kind kind = Kind::zonal;
  int resolution = 48;         // target nodes per axis (deterministic) / sample count (MC)
  std::uint64_t seed = 1;      // MC only
  double reported_tolerance = 1e-8;
};

QuadratureRule make_rule(QuadratureRule::Kind kind, int resolution,
                         std::uint64_t seed = 1, double reported_tolerance = 1e-8);

// Gauss-Legendre rule on [-1,1]; nodes by Newton iteration, cached per order.
struct GaussLegendre {
  std::vector<double> x, w;
};
const GaussLegendre& gauss_legendre(int order);

// Composite GL axis on [a,b] with geometric panel grading: the first panel has
// width start_width at a (and, if two_sided, also at b), doubling inward.
struct Axis {
  std::vector<double> nodes, weights;
};
Axis graded_axis(double a, double b, double start_width, int order, bool two_sided = false);

// int_{S^n} f(d(p,.)) dV = omega_{n-1} int_0^pi f(r) sin^{n-1} r dr.
// peak_scale grades the r-ladder near r=0 (concentrated integrands pass sqrt(beta-1)).
double integrate_zonal(int n, const std::function<double(double)>& f,
                       const QuadratureRule& rule, double peak_scale = 0.35);

// Two-center integrands via the spherical law of cosines:
// cos d(x,q) = cos r cos theta + sin r sin theta cos psi, centers separated by theta,
// omega_{n-2} int int f(r,psi) sin^{n-1} r sin^{n-2} psi dpsi dr.
double integrate_bizonal(int n, double theta,
                         const std::function<double(double, double)>& f,
                         const QuadratureRule& rule, double peak_scale = 0.35);

// Zonal integral restricted to the geodesic ball r < delta (or its complement).
double ball_restricted_zonal(int n, double delta, const std::function<double(double)>& f,
                             const QuadratureRule& rule, bool complement = false,
                             double peak_scale = 0.35);

struct McResult {
  double estimate;
  double std_error;
};
// Uniform sampling via normalized Gaussian vectors (deterministic Box-Muller).
McResult integrate_mc(int n, const std::function<double(const SpherePoint&)>& f,
                      const QuadratureRule& rule);

// Full tensor grid over iterated spherical angles; general integrands, n <= 5 only.
double integrate_product_grid(int n, const std::function<double(const SpherePoint&)>& f,
                              const QuadratureRule& rule);

// Orbit-adapted deterministic grid for integrands built from centers in the two complex
// coordinate planes: x = (cos phi cos eta e^{i alpha}, cos phi sin eta e^{i gamma}, sin phi xi).
// Such integrands are constant in xi and separately (2pi/m)-periodic and even in alpha and
// gamma, so the cell [0, pi/m]^2 with multiplier 4 m^2 suffices.  Axis weights carry the
// measure factors cos^3 phi sin^{n-4} phi, cos eta sin eta and the S^{n-4} fiber volume.
struct BiplanarGrid {
  int n = 0, m = 0;
  Axis phi;    // empty for n = 3
  Axis eta;    // [0, pi/2], ladders at both ends
  Axis alpha;  // [0, pi/m], ladder at 0
  Axis gamma;  // [0, pi/m], ladder at 0
  double fiber = 1.0;
  double mult = 1.0;
};
BiplanarGrid make_biplanar_grid(int n, int m, double beta, int resolution);

} // namespace yamabe
