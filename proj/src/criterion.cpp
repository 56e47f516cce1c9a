#include "yamabe/criterion.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "yamabe/kernels.hpp"

namespace yamabe {

namespace {

double chord_power(double cosd, int n) {
  const double one_minus = 1.0 - cosd;
  if (one_minus < 5e-19) fail(errc::singularity, "mu_pair: coincident orbit points");
  return std::pow(one_minus, 0.5 * (2 - n));
}

} // namespace

MuPair mu_pair(const SignedOrbit& orbit, int n) {
  if (n < 3) fail(errc::domain, "mu_pair: n >= 3");
  if (orbit.is_fixed_point()) fail(errc::domain, "mu_pair: needs a free orbit");
  const auto& P = orbit.plus_points;
  const auto& Q = orbit.minus_points;
  std::vector<double> terms;
  terms.reserve(P.size() * (P.size() - 1));
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = 0; j < P.size(); ++j)
      if (i != j) terms.push_back(chord_power(dot(P[i], P[j]), n));
  const double mu = kernels::pairwise_sum(terms.data(), terms.size());
  terms.clear();
  for (const auto& p : P)
    for (const auto& q : Q) terms.push_back(chord_power(dot(p, q), n));
  const double mu_hat = kernels::pairwise_sum(terms.data(), terms.size());
  return {mu, mu_hat};
}

double a_nm(int n, int m) {
  if (n < 3) fail(errc::domain, "a_nm: n >= 3");
  if (m < 1) fail(errc::domain, "a_nm: m >= 1");
  const long double pi = std::numbers::pi_v<long double>;
  const long double s2 = std::sqrt(2.0L);
  long double sum = 0.0L;
  for (int j = 1; j < m; ++j)
    sum += std::pow(s2 * std::sin(pi * j / m), static_cast<long double>(2 - n));
  return static_cast<double>(sum - m);
}

CriterionResult evaluate_criterion(int n, int m) {
  CriterionResult r;
  r.n = n;
  r.m = m;
  r.a_nm = a_nm(n, m);
  std::vector<double> base(n + 1, 0.0);
  base[0] = 1.0;
  const SignedOrbit o = orbit(build_gamma_m(n, m), SpherePoint(base));
  const MuPair mp = mu_pair(o, n);
  r.mu = mp.mu;
  r.mu_hat = mp.mu_hat;
  r.positive = (mp.mu - mp.mu_hat) > 0;
  return r;
}

std::optional<int> minimal_m(int n, int m_max) {
  if (n < 3) fail(errc::domain, "minimal_m: n >= 3");
  if (m_max < 2) fail(errc::domain, "minimal_m: m_max >= 2");
  for (int m = 2; m <= m_max; ++m) {
    const double a = a_nm(n, m);
    if (a > 0) return m;
  }
  return std::nullopt;
}

double f_n0(int n0, double x) {
  if (x < 0) fail(errc::domain, "f_n0: x >= 0");
  return std::pow(2.0 * x, 1.0 / n0) - std::numbers::sqrt2 * std::sin(std::numbers::pi * x);
}

double sine_gap_margin(int m) {
  if (m < 2) fail(errc::domain, "sine_gap_margin: m >= 2");
  const double pi = std::numbers::pi;
  return 1.0 / std::sin(pi / (m + 1)) - 1.0 / std::sin(pi / m) - (std::numbers::sqrt2 - 1.0) / 2.0;
}

SineGapConstants sine_gap_constants() {
  const double t = std::numbers::pi / 9.0;
  return {t / (6.0 - t * t), 1.0 / std::numbers::pi - (std::numbers::sqrt2 - 1.0) / 2.0};
}

bool a3_recursion_check(int m) {
  if (m < 2) fail(errc::domain, "a3_recursion_check: m >= 2");
  const double pi = std::numbers::pi;
  const double lhs = a_nm(3, m + 1);
  const double rhs = a_nm(3, m) +
                     std::numbers::sqrt2 * (0.5 - std::numbers::sqrt2 / 2.0 +
                                            1.0 / std::sin(pi / (m + 1)) - 1.0 / std::sin(pi / m));
  return lhs - rhs >= -1e-12 * (1.0 + std::abs(lhs));
}

} // namespace yamabe
