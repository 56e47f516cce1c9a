#pragma once

#include <vector>

#include "yamabe/quadrature.hpp"

namespace yamabe {

// Interaction integral I_beta(theta) = int_{S^n} u_a u_b^{2^*-1} dV for two bubbles
// whose centers are separated by the angle theta.
double pair_integral(int n, double beta, double theta, const QuadratureRule& rule);

// Squared H^1 norm <w,w> = int (|grad w|^2 + a_n w^2) dV of the signed 2m-center
// superposition, expanded through the bubble equation into center-pair interactions:
//   a_n [ 2m vol(S^n) + 2m sum_{j=1}^{m-1} I(theta_j) - 2m^2 I(pi/2) ],
// theta_j = angular gap between same-block centers, pi/2 between opposite blocks.
double h1_norm_sq_pairing(int n, int m, double beta, const QuadratureRule& rule);

// Direct quadrature of |grad w|^2, w^2 and |w|^{2^*} on the orbit-adapted grid for the
// standard configuration (plus centers in the z1-plane at angles 2 pi j / m, minus centers
// in the z2-plane at the negated angles).
struct DirectFields {
  double lp_mass = 0.0; // int |w|^{2^*} dV
  double grad_sq = 0.0; // int |grad w|^2 dV
  double l2_sq = 0.0;   // int w^2 dV
};
DirectFields direct_fields(int n, int m, double beta, const QuadratureRule& rule);

double h1_norm_sq_direct(int n, int m, double beta, const QuadratureRule& rule);
double lp_mass(int n, int m, double beta, const QuadratureRule& rule);

// Scaling onto the Nehari manifold and the resulting invariants:
//   t = (h1 / (a_n lp))^{(n-2)/4},  quotient Y = h1 / (a_n lp)^{(n-2)/n},
//   energy J(t w) = Y^{n/2} / n.
struct NehariScale {
  double t = 0.0;
  double quotient = 0.0;
  double energy = 0.0;
};
NehariScale nehari_scale(int n, double h1, double lp);

struct EnergyReport {
  int n = 0, m = 0;
  double beta = 0.0;
  double h1_norm_sq = 0.0;        // pairing evaluation
  double h1_norm_sq_direct = 0.0; // grid evaluation of the same quantity
  double lp_mass = 0.0;
  double nehari_t = 0.0;
  double quotient = 0.0;
  double energy = 0.0;
  double bound = 0.0; // 2m c_n, the level below which the min-max solution is nodal
  bool certified = false;
  double agreement = 0.0; // |h1_direct / h1_pairing - 1|, gated at 0.5%
};
EnergyReport energy_report(int n, int m, double beta, const QuadratureRule& rule);

struct SweepResult {
  std::vector<EnergyReport> reports; // ascending beta
  bool any_certified = false;
  double best_beta = 0.0;
  double best_margin = 0.0;  // max over the grid of (bound - energy) / bound
  double deficit_slope = 0.0; // (Y_lim - Y) / (beta-1)^{(n-2)/2} at the smallest beta;
                              // its sign tracks the sign of the interaction criterion
};
SweepResult certification_sweep(int n, int m, const std::vector<double>& beta_grid,
                                const QuadratureRule& rule);

// Default certification grid: beta = 1 + logspace(1e-3 .. 0.5), 13 points.
std::vector<double> default_beta_grid();

// Concentration of int_{B_delta} u^{2^*-1} dV: the ball integral divided by the predicted
// leading term (2^{(3n+2)/4} vol(S^{n-1}) / n) (beta-1)^{(n-2)/4} tends to 1, while the
// complement scales like (beta-1)^{(n+2)/4}.
struct ConvergenceRow {
  double eps = 0.0; // beta - 1
  double ball = 0.0;
  double ratio = 0.0;
  double complement = 0.0;
  double complement_scaled = 0.0; // complement / eps^{(n+2)/4}
};
struct ConvergenceReport {
  int n = 0;
  double delta = 0.0;
  double leading_constant = 0.0;
  std::vector<ConvergenceRow> rows;
  double complement_variation = 0.0; // max/min of complement_scaled
};
ConvergenceReport ball_concentration_convergence(int n, const std::vector<double>& eps_list,
                                      double delta, const QuadratureRule& rule);

// Richardson extrapolation for a quantity sampled at step ratios 1:2:4.
struct Richardson {
  double qhat = 0.0;  // measured convergence order
  double limit = 0.0; // extrapolated value
};
Richardson richardson_limit(double s1, double s2, double s4);

// Slope of (h1 - 2m a_n vol(S^n)) / (beta-1)^{(n-2)/2} as beta -> 1, measured at
// beta - 1 in {0.002, 0.004, 0.008} and extrapolated; the predicted limit is
// (2^{n+1} a_n vol(S^{n-1}) / n) * m * a_nm(n, m).
struct SlopeReport {
  int n = 0, m = 0;
  double s[3] = {0.0, 0.0, 0.0};
  double qhat = 0.0;
  double limit = 0.0;
  double predicted = 0.0;
  double rel_error = 0.0;
};
SlopeReport norm_expansion_slope(int n, int m, const QuadratureRule& rule);

} // namespace yamabe
