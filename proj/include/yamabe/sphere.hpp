#pragma once

#include <vector>

#include "yamabe/error.hpp"

namespace yamabe {

// Unit vector in R^{n+1}; ambient coordinates (z1,z2,x) in C x C x R^{n-3} flattened
// as (Re z1, Im z1, Re z2, Im z2, x_1..x_{n-3}).  Renormalized on construction.
struct SpherePoint {
  explicit SpherePoint(std::vector<double> coords);
  int n() const { return static_cast<int>(c.size()) - 1; }
  std::vector<double> c;
};

struct SphereConstants {
  int n;
  double omega_n;    // vol(S^n)
  double omega_nm1;  // vol(S^{n-1})
  double a_n;        // n(n-2)/4
  double two_star;   // 2n/(n-2)
  double c_n;        // (n-2)/4 * omega_n
};

SphereConstants make_constants(int n);

// vol(S^k) = 2 pi^{(k+1)/2} / Gamma((k+1)/2), k >= 1.
double sphere_volume(int k);

double dot(const SpherePoint& p, const SpherePoint& q);

// arccos of the clamped inner product, in [0, pi].
double geodesic_distance(const SpherePoint& p, const SpherePoint& q);

// Stereographic chart from the pole p: |sigma(q)| = cot(d(p,q)/2); the antipode maps to 0.
std::vector<double> stereographic_forward(const SpherePoint& pole, const SpherePoint& q);
SpherePoint stereographic_inverse(const SpherePoint& pole, const std::vector<double>& x);

// Pullback metric factor 4/(1+|x|^2)^2 in the chart.
double conformal_factor(const std::vector<double>& x);

} // namespace yamabe
