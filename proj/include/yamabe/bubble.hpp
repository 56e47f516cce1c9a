#pragma once

#include <vector>

#include "yamabe/group.hpp"
#include "yamabe/quadrature.hpp"
#include "yamabe/sphere.hpp"

namespace yamabe {

// Conformal bubble centered at `center`:
//   u(x) = (beta^2-1)^{(n-2)/4} (beta - cos d(center, x))^{-(n-2)/2},  beta > 1.
// Normalized so that int u^{2n/(n-2)} dV = vol(S^n) for every beta.
struct Bubble {
  int n;
  SpherePoint center;
  double beta;
  double norm_constant; // (beta^2-1)^{(n-2)/4}

  Bubble(int n_, SpherePoint center_, double beta_);
};

double bubble_value(const Bubble& b, const SpherePoint& x);
double bubble_value(const Bubble& b, double r); // zonal form, r = geodesic distance
double bubble_radial_derivative(const Bubble& b, double r);

// Signed superposition over a two-block orbit: sum over plus centers minus sum
// over minus centers.  Vanishes on the fixed set of the sign-reversing elements.
struct NodalAnsatz {
  int n;
  double beta;
  SignedOrbit orbit;
  double norm_constant;

  NodalAnsatz(int n_, double beta_, SignedOrbit orbit_);

  double value(const SpherePoint& x) const;
  // squared length of the tangential gradient: |G|^2 - <G,x>^2 for the ambient G
  double gradient_norm_sq(const SpherePoint& x) const;
};

double ansatz_value(const NodalAnsatz& w, const SpherePoint& x);

// Residual check of the single-bubble identities
//   int u^{2*} dV = vol(S^n)   and   int (|grad u|^2 + a_n u^2) dV = a_n vol(S^n).
// omega_scale deliberately rescales the expected volume so tampering is observable.
struct SolutionIdentityReport {
  double mass = 0.0, mass_expected = 0.0;
  double h1 = 0.0, h1_expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};
SolutionIdentityReport solution_identity_check(int n, double beta,
                                               const QuadratureRule& rule,
                                               double omega_scale = 1.0,
                                               double tolerance = 1e-7);

} // namespace yamabe
