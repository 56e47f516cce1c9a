#include "yamabe/energy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "yamabe/criterion.hpp"
#include "yamabe/error.hpp"
#include "yamabe/kernels.hpp"
#include "yamabe/sphere.hpp"

namespace yamabe {

namespace {

constexpr double kPi = 3.14159265358979323846;

double concentration_scale(double beta) {
  return std::clamp(0.5 * std::sqrt(beta - 1.0), 1e-7, 0.35);
}

// |d|^{2^*} with multiplication-only fast paths for the integer exponents
double abs_pow_two_star(double d, int n, double two_star) {
  const double d2 = d * d;
  switch (n) {
    case 3: return d2 * d2 * d2;           // 2^* = 6
    case 4: return d2 * d2;                // 2^* = 4
    case 6: return d2 * std::abs(d);       // 2^* = 3
    default: return std::pow(std::abs(d), two_star);
  }
}

struct Kahan {
  double sum = 0.0, carry = 0.0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

void validate_pair(int n, int m, double beta) {
  if (n < 3) fail(errc::domain, "energy computations need n >= 3");
  if (m < 1) fail(errc::domain, "energy computations need m >= 1");
  if (!(beta > 1.0)) fail(errc::domain, "energy computations need beta > 1");
}

} // namespace

double pair_integral(int n, double beta, double theta, const QuadratureRule& rule) {
  validate_pair(n, 1, beta);
  const double cb = std::pow(beta * beta - 1.0, 0.25 * (n - 2));
  const double pow_cb = std::pow(cb, (n + 2.0) / (n - 2.0));
  const double ct = std::cos(theta), st = std::sin(theta);
  return integrate_bizonal(
      n, theta,
      [&](double r, double psi) {
        const double cr = std::cos(r), sr = std::sin(r);
        const double cd = cr * ct + sr * st * std::cos(psi);
        const double ua = kernels::bubble_value_scalar(cd, n, beta, cb);
        const double ub = pow_cb * std::pow(beta - cr, -0.5 * (n + 2));
        return ua * ub;
      },
      rule, concentration_scale(beta));
}

double h1_norm_sq_pairing(int n, int m, double beta, const QuadratureRule& rule) {
  validate_pair(n, m, beta);
  const SphereConstants k = make_constants(n);
  // I depends on the gap only; j and m-j give the same separation
  std::map<int, double> cache;
  auto gap_integral = [&](int j) {
    const int key = std::min(j, m - j);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const double theta = 2.0 * kPi * key / m;
    const double val = pair_integral(n, beta, theta, rule);
    cache.emplace(key, val);
    return val;
  };
  double total = 2.0 * m * k.omega_n;
  for (int j = 1; j < m; ++j) total += 2.0 * m * gap_integral(j);
  total -= 2.0 * static_cast<double>(m) * m * pair_integral(n, beta, 0.5 * kPi, rule);
  return k.a_n * total;
}

DirectFields direct_fields(int n, int m, double beta, const QuadratureRule& rule) {
  validate_pair(n, m, beta);
  const SphereConstants k = make_constants(n);
  const BiplanarGrid grid = make_biplanar_grid(n, m, beta, rule.resolution);
  const double cb = std::pow(beta * beta - 1.0, 0.25 * (n - 2));
  const double two_star = k.two_star;

  const std::size_t na = grid.alpha.nodes.size();
  const std::size_t ng = grid.gamma.nodes.size();
  const double* aw = grid.alpha.weights.data();
  const double* gw = grid.gamma.weights.data();
  const double sum_aw = kernels::pairwise_sum(aw, na);
  const double sum_gw = kernels::pairwise_sum(gw, ng);

  std::vector<double> cth(m), sth(m);
  for (int j = 0; j < m; ++j) {
    cth[j] = std::cos(2.0 * kPi * j / m);
    sth[j] = std::sin(2.0 * kPi * j / m);
  }
  // center-relative cosines, slab-independent: cos(alpha_i - th_j), cos(gamma_i + th_j)
  std::vector<double> cda(static_cast<std::size_t>(m) * na), cdg(static_cast<std::size_t>(m) * ng);
  std::vector<double> ca(na), sa(na), cg(ng), sg(ng);
  for (std::size_t i = 0; i < na; ++i) {
    ca[i] = std::cos(grid.alpha.nodes[i]);
    sa[i] = std::sin(grid.alpha.nodes[i]);
  }
  for (std::size_t i = 0; i < ng; ++i) {
    cg[i] = std::cos(grid.gamma.nodes[i]);
    sg[i] = std::sin(grid.gamma.nodes[i]);
  }
  for (int j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < na; ++i) cda[j * na + i] = ca[i] * cth[j] + sa[i] * sth[j];
    for (std::size_t i = 0; i < ng; ++i) cdg[j * ng + i] = cg[i] * cth[j] - sg[i] * sth[j];
  }

  std::vector<double> t(std::max(na, ng)), F(std::max(na, ng)), dF(std::max(na, ng));
  std::vector<double> P(na), Spx(na), Spy(na), Q(ng), Sqx(ng), Sqy(ng);
  std::vector<double> grad_a(na), xdot(na), p2(na), grad_g(ng), ydot(ng), q2(ng);

  // phi block degenerates to a single unit-weight slab on S^3
  const std::size_t nphi = (n == 3) ? 1 : grid.phi.nodes.size();
  Kahan lp_acc, grad_acc, l2_acc;

  for (std::size_t fi = 0; fi < nphi; ++fi) {
    const double cphi = (n == 3) ? 1.0 : std::cos(grid.phi.nodes[fi]);
    const double fw = (n == 3) ? 1.0 : grid.phi.weights[fi];
    for (std::size_t ei = 0; ei < grid.eta.nodes.size(); ++ei) {
      const double c1 = cphi * std::cos(grid.eta.nodes[ei]);
      const double c2 = cphi * std::sin(grid.eta.nodes[ei]);
      const double wslab = fw * grid.eta.weights[ei];

      std::fill(P.begin(), P.end(), 0.0);
      std::fill(Spx.begin(), Spx.end(), 0.0);
      std::fill(Spy.begin(), Spy.end(), 0.0);
      for (int j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < na; ++i) t[i] = c1 * cda[j * na + i];
        kernels::bubble_terms(t.data(), na, n, beta, cb, F.data(), dF.data());
        for (std::size_t i = 0; i < na; ++i) {
          P[i] += F[i];
          Spx[i] += dF[i] * cth[j];
          Spy[i] += dF[i] * sth[j];
        }
      }
      std::fill(Q.begin(), Q.end(), 0.0);
      std::fill(Sqx.begin(), Sqx.end(), 0.0);
      std::fill(Sqy.begin(), Sqy.end(), 0.0);
      for (int j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < ng; ++i) t[i] = c2 * cdg[j * ng + i];
        kernels::bubble_terms(t.data(), ng, n, beta, cb, F.data(), dF.data());
        for (std::size_t i = 0; i < ng; ++i) {
          Q[i] += F[i];
          Sqx[i] += dF[i] * cth[j];
          Sqy[i] -= dF[i] * sth[j];
        }
      }

      // tangential gradient: |Sp|^2 + |Sq|^2 - (xdot - ydot)^2, separable in alpha/gamma
      for (std::size_t i = 0; i < na; ++i) {
        xdot[i] = c1 * (Spx[i] * ca[i] + Spy[i] * sa[i]);
        grad_a[i] = Spx[i] * Spx[i] + Spy[i] * Spy[i] - xdot[i] * xdot[i];
        p2[i] = P[i] * P[i];
      }
      for (std::size_t i = 0; i < ng; ++i) {
        ydot[i] = c2 * (Sqx[i] * cg[i] + Sqy[i] * sg[i]);
        grad_g[i] = Sqx[i] * Sqx[i] + Sqy[i] * Sqy[i] - ydot[i] * ydot[i];
        q2[i] = Q[i] * Q[i];
      }
      const double ma_grad = kernels::pairwise_dot(aw, grad_a.data(), na);
      const double ma_x = kernels::pairwise_dot(aw, xdot.data(), na);
      const double ma_p = kernels::pairwise_dot(aw, P.data(), na);
      const double ma_p2 = kernels::pairwise_dot(aw, p2.data(), na);
      const double mg_grad = kernels::pairwise_dot(gw, grad_g.data(), ng);
      const double mg_y = kernels::pairwise_dot(gw, ydot.data(), ng);
      const double mg_q = kernels::pairwise_dot(gw, Q.data(), ng);
      const double mg_q2 = kernels::pairwise_dot(gw, q2.data(), ng);

      grad_acc.add(wslab * (ma_grad * sum_gw + sum_aw * mg_grad + 2.0 * ma_x * mg_y));
      l2_acc.add(wslab * (ma_p2 * sum_gw - 2.0 * ma_p * mg_q + sum_aw * mg_q2));

      double lp_slab = 0.0;
      for (std::size_t i = 0; i < na; ++i) {
        const double pi_val = P[i];
        double row = 0.0;
        for (std::size_t jj = 0; jj < ng; ++jj) {
          row += gw[jj] * abs_pow_two_star(pi_val - Q[jj], n, two_star);
        }
        lp_slab += aw[i] * row;
      }
      lp_acc.add(wslab * lp_slab);
    }
  }

  const double scale = grid.mult * grid.fiber;
  DirectFields out;
  out.lp_mass = scale * lp_acc.sum;
  out.grad_sq = scale * grad_acc.sum;
  out.l2_sq = scale * l2_acc.sum;
  if (!(std::isfinite(out.lp_mass) && std::isfinite(out.grad_sq) && std::isfinite(out.l2_sq))) {
    fail(errc::numerical, "direct_fields produced a non-finite integral");
  }
  return out;
}

double h1_norm_sq_direct(int n, int m, double beta, const QuadratureRule& rule) {
  const DirectFields f = direct_fields(n, m, beta, rule);
  return f.grad_sq + make_constants(n).a_n * f.l2_sq;
}

double lp_mass(int n, int m, double beta, const QuadratureRule& rule) {
  return direct_fields(n, m, beta, rule).lp_mass;
}

NehariScale nehari_scale(int n, double h1, double lp) {
  if (n < 3) fail(errc::domain, "nehari_scale needs n >= 3");
  if (!(h1 > 0.0 && lp > 0.0)) {
    fail(errc::numerical, "nehari_scale needs positive norm and mass");
  }
  const SphereConstants k = make_constants(n);
  NehariScale s;
  s.t = std::pow(h1 / (k.a_n * lp), 0.25 * (n - 2));
  s.quotient = h1 / std::pow(k.a_n * lp, (n - 2.0) / n);
  s.energy = std::pow(s.quotient, 0.5 * n) / n;
  return s;
}

EnergyReport energy_report(int n, int m, double beta, const QuadratureRule& rule) {
  validate_pair(n, m, beta);
  const SphereConstants k = make_constants(n);
  const DirectFields f = direct_fields(n, m, beta, rule);
  const double h1p = h1_norm_sq_pairing(n, m, beta, rule);
  const double h1d = f.grad_sq + k.a_n * f.l2_sq;

  EnergyReport rep;
  rep.n = n;
  rep.m = m;
  rep.beta = beta;
  rep.h1_norm_sq = h1p;
  rep.h1_norm_sq_direct = h1d;
  rep.lp_mass = f.lp_mass;
  rep.agreement = std::abs(h1d / h1p - 1.0);
  if (!(rep.agreement <= 5e-3)) {
    fail(errc::numerical, "pairing and direct H1 norms disagree by " +
                              std::to_string(rep.agreement) + " at n=" + std::to_string(n) +
                              " m=" + std::to_string(m) + " beta=" + std::to_string(beta));
  }
  const NehariScale s = nehari_scale(n, h1p, f.lp_mass);
  rep.nehari_t = s.t;
  rep.quotient = s.quotient;
  rep.energy = s.energy;
  rep.bound = 2.0 * m * k.c_n;
  rep.certified = rep.energy < rep.bound;
  return rep;
}

std::vector<double> default_beta_grid() {
  // 1 + logspace(-3, log10(0.5), 13)
  std::vector<double> grid(13);
  const double lo = std::log10(1e-3), hi = std::log10(0.5);
  for (int i = 0; i < 13; ++i) {
    grid[i] = 1.0 + std::pow(10.0, lo + (hi - lo) * i / 12.0);
  }
  return grid;
}

SweepResult certification_sweep(int n, int m, const std::vector<double>& beta_grid,
                                const QuadratureRule& rule) {
  if (beta_grid.empty()) fail(errc::domain, "certification sweep needs a non-empty grid");
  std::vector<double> grid = beta_grid;
  std::sort(grid.begin(), grid.end());
  const SphereConstants k = make_constants(n);

  SweepResult sweep;
  sweep.reports.reserve(grid.size());
  for (double beta : grid) sweep.reports.push_back(energy_report(n, m, beta, rule));

  sweep.best_margin = -1e300;
  for (const EnergyReport& r : sweep.reports) {
    const double margin = (r.bound - r.energy) / r.bound;
    if (margin > sweep.best_margin) {
      sweep.best_margin = margin;
      sweep.best_beta = r.beta;
    }
    sweep.any_certified = sweep.any_certified || r.certified;
  }
  const double y_lim = std::pow(2.0 * m * k.a_n * k.omega_n, 2.0 / n);
  const EnergyReport& first = sweep.reports.front();
  sweep.deficit_slope =
      (y_lim - first.quotient) / std::pow(first.beta - 1.0, 0.5 * (n - 2));
  return sweep;
}

Richardson richardson_limit(double s1, double s2, double s4) {
  Richardson r;
  const double d12 = s1 - s2, d24 = s2 - s4;
  if (!(d12 * d24 > 0.0)) {
    fail(errc::numerical, "richardson_limit needs a monotone refinement sequence");
  }
  r.qhat = std::log2(d24 / d12);
  r.limit = s1 + d12 / (std::pow(2.0, r.qhat) - 1.0);
  return r;
}

ConvergenceReport ball_concentration_convergence(int n, const std::vector<double>& eps_list,
                                      double delta, const QuadratureRule& rule) {
  if (n < 3) fail(errc::domain, "ball_concentration_convergence needs n >= 3");
  if (!(delta > 0.0 && delta < kPi)) fail(errc::domain, "ball radius must lie in (0, pi)");
  if (eps_list.empty()) fail(errc::domain, "ball_concentration_convergence needs sample betas");

  ConvergenceReport rep;
  rep.n = n;
  rep.delta = delta;
  rep.leading_constant =
      std::pow(2.0, 0.25 * (3 * n + 2)) * sphere_volume(n - 1) / n;

  double lo = 1e300, hi = 0.0;
  for (double eps : eps_list) {
    if (!(eps > 0.0)) fail(errc::domain, "ball_concentration_convergence needs beta > 1 samples");
    const double beta = 1.0 + eps;
    const double cb = std::pow(beta * beta - 1.0, 0.25 * (n - 2));
    const double pow_cb = std::pow(cb, (n + 2.0) / (n - 2.0));
    auto integrand = [&](double r) {
      return pow_cb * std::pow(beta - std::cos(r), -0.5 * (n + 2));
    };
    ConvergenceRow row;
    row.eps = eps;
    row.ball = ball_restricted_zonal(n, delta, integrand, rule, /*complement=*/false,
                                     concentration_scale(beta));
    row.ratio = row.ball / (rep.leading_constant * std::pow(eps, 0.25 * (n - 2)));
    row.complement = ball_restricted_zonal(n, delta, integrand, rule, /*complement=*/true,
                                           /*peak_scale=*/0.2);
    row.complement_scaled = row.complement / std::pow(eps, 0.25 * (n + 2));
    rep.rows.push_back(row);
    lo = std::min(lo, row.complement_scaled);
    hi = std::max(hi, row.complement_scaled);
  }
  rep.complement_variation = hi / lo;
  return rep;
}

SlopeReport norm_expansion_slope(int n, int m, const QuadratureRule& rule) {
  validate_pair(n, m, 2.0);
  SlopeReport rep;
  rep.n = n;
  rep.m = m;
  const SphereConstants k = make_constants(n);
  const double eps[3] = {0.002, 0.004, 0.008};
  for (int i = 0; i < 3; ++i) {
    const double h1 = h1_norm_sq_pairing(n, m, 1.0 + eps[i], rule);
    rep.s[i] = (h1 - 2.0 * m * k.a_n * k.omega_n) / std::pow(eps[i], 0.5 * (n - 2));
  }
  const Richardson rich = richardson_limit(rep.s[0], rep.s[1], rep.s[2]);
  rep.qhat = rich.qhat;
  rep.limit = rich.limit;
  rep.predicted =
      std::pow(2.0, n + 1) * k.a_n * k.omega_nm1 / n * (m * a_nm(n, m));
  rep.rel_error = std::abs(rep.limit / rep.predicted - 1.0);
  return rep;
}

} // namespace yamabe
