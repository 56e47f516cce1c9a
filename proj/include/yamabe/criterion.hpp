#pragma once

#include <optional>

#include "yamabe/group.hpp"

namespace yamabe {

// Interaction sums over a signed orbit.  mu sums the inverse-chord power
// (1 - cos d)^{(2-n)/2} over ordered same-sign pairs, mu_hat over all
// plus x minus pairs; their difference's sign decides the energy bound.
struct CriterionResult {
  int n = 0;
  int m = 0;
  double mu = 0;
  double mu_hat = 0;
  double a_nm = 0;
  bool positive = false;
};

struct MuPair {
  double mu;
  double mu_hat;
};

MuPair mu_pair(const SignedOrbit& orbit, int n);

// Closed form a_{n,m} = sum_{j=1}^{m-1} (sqrt(2) sin(pi j/m))^{2-n} - m.
// Accumulated in long double; agrees with (mu - mu_hat)/m at the standard base point.
double a_nm(int n, int m);

CriterionResult evaluate_criterion(int n, int m);

// Smallest m <= m_max with a_{n,m} > 0, all smaller values having been verified <= 0.
std::optional<int> minimal_m(int n, int m_max);

// f_{n0}(x) = (2x)^{1/n0} - sqrt(2) sin(pi x); positive on (0, 1/5], (0, 1/6], (0, 1/7]
// for n0 = 5, 4, 3, which drives the threshold table for n >= 5.
double f_n0(int n0, double x);

// 1/sin(pi/(m+1)) - 1/sin(pi/m) - (sqrt(2)-1)/2; positive for every m >= 9.
double sine_gap_margin(int m);

struct SineGapConstants {
  double lower;  // (pi/9) / (6 - (pi/9)^2)
  double limit;  // 1/pi - (sqrt(2)-1)/2
};
SineGapConstants sine_gap_constants();

// a_{3,m+1} >= a_{3,m} + sqrt(2) (1/2 - sqrt(2)/2 + 1/sin(pi/(m+1)) - 1/sin(pi/m)),
// with a relative slack of 1e-12 (the bound is attained exactly at m = 2 and m = 3).
bool a3_recursion_check(int m);

} // namespace yamabe
