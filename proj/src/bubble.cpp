#include "yamabe/bubble.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "yamabe/error.hpp"
#include "yamabe/kernels.hpp"

namespace yamabe {

namespace {

// centers as a flat row-major (count x (n+1)) block for batched inner products
struct CenterBlock {
  std::vector<double> coords;
  std::vector<double> sign;
  int dim = 0;

  void add(const SpherePoint& p, double s) {
    coords.insert(coords.end(), p.c.begin(), p.c.end());
    sign.push_back(s);
    dim = static_cast<int>(p.c.size());
  }
  std::size_t count() const { return sign.size(); }

  void inner_products(const SpherePoint& x, std::vector<double>& t) const {
    t.resize(count());
    for (std::size_t i = 0; i < count(); ++i) {
      const double* row = coords.data() + i * dim;
      double acc = 0.0;
      for (int k = 0; k < dim; ++k) acc += row[k] * x.c[k];
      t[i] = acc;
    }
  }
};

} // namespace

Bubble::Bubble(int n_, SpherePoint center_, double beta_)
    : n(n_), center(std::move(center_)), beta(beta_) {
  if (n < 3) fail(errc::domain, "bubble needs n >= 3");
  if (center.n() != n) fail(errc::dimension_mismatch, "bubble center dimension mismatch");
  if (!(beta - 1.0 >= 1e-8)) {
    fail(errc::domain, "bubble concentration parameter must satisfy beta >= 1 + 1e-8");
  }
  norm_constant = std::pow(beta * beta - 1.0, 0.25 * (n - 2));
}

double bubble_value(const Bubble& b, const SpherePoint& x) {
  return kernels::bubble_value_scalar(dot(b.center, x), b.n, b.beta, b.norm_constant);
}

double bubble_value(const Bubble& b, double r) {
  return kernels::bubble_value_scalar(std::cos(r), b.n, b.beta, b.norm_constant);
}

double bubble_radial_derivative(const Bubble& b, double r) {
  // d/dr of norm_constant (beta - cos r)^{-(n-2)/2}
  const double t = std::cos(r);
  const double u = kernels::bubble_value_scalar(t, b.n, b.beta, b.norm_constant);
  return -0.5 * (b.n - 2) * std::sin(r) * u / (b.beta - t);
}

NodalAnsatz::NodalAnsatz(int n_, double beta_, SignedOrbit orbit_)
    : n(n_), beta(beta_), orbit(std::move(orbit_)) {
  if (n < 3) fail(errc::domain, "nodal ansatz needs n >= 3");
  if (!(beta - 1.0 >= 1e-8)) {
    fail(errc::domain, "nodal ansatz concentration parameter must satisfy beta >= 1 + 1e-8");
  }
  if (orbit.is_fixed_point()) {
    fail(errc::assumption, "nodal ansatz needs a free two-block orbit, not a fixed point");
  }
  if (orbit.plus_points.size() != orbit.minus_points.size()) {
    fail(errc::assumption, "nodal ansatz needs equally sized center blocks");
  }
  for (const SpherePoint& p : orbit.plus_points) {
    if (p.n() != n) fail(errc::dimension_mismatch, "orbit/ansatz dimension mismatch");
  }
  norm_constant = std::pow(beta * beta - 1.0, 0.25 * (n - 2));
}

double NodalAnsatz::value(const SpherePoint& x) const {
  if (x.n() != n) fail(errc::dimension_mismatch, "ansatz evaluated off its sphere");
  CenterBlock block;
  for (const SpherePoint& p : orbit.plus_points) block.add(p, 1.0);
  for (const SpherePoint& q : orbit.minus_points) block.add(q, -1.0);
  std::vector<double> t, F(block.count());
  block.inner_products(x, t);
  kernels::bubble_values(t.data(), t.size(), n, beta, norm_constant, F.data());
  return kernels::pairwise_dot(F.data(), block.sign.data(), F.size());
}

double NodalAnsatz::gradient_norm_sq(const SpherePoint& x) const {
  if (x.n() != n) fail(errc::dimension_mismatch, "ansatz evaluated off its sphere");
  CenterBlock block;
  for (const SpherePoint& p : orbit.plus_points) block.add(p, 1.0);
  for (const SpherePoint& q : orbit.minus_points) block.add(q, -1.0);
  std::vector<double> t, F(block.count()), dF(block.count());
  block.inner_products(x, t);
  kernels::bubble_terms(t.data(), t.size(), n, beta, norm_constant, F.data(), dF.data());

  // ambient gradient G = sum_i s_i dF_i c_i; tangential part removes <G,x> x
  std::vector<double> G(x.c.size(), 0.0);
  for (std::size_t i = 0; i < block.count(); ++i) {
    const double* row = block.coords.data() + i * block.dim;
    const double g = block.sign[i] * dF[i];
    for (std::size_t k = 0; k < G.size(); ++k) G[k] += g * row[k];
  }
  double g2 = 0.0, h = 0.0;
  for (std::size_t k = 0; k < G.size(); ++k) {
    g2 += G[k] * G[k];
    h += G[k] * x.c[k];
  }
  return g2 - h * h;
}

double ansatz_value(const NodalAnsatz& w, const SpherePoint& x) { return w.value(x); }

SolutionIdentityReport solution_identity_check(int n, double beta,
                                               const QuadratureRule& rule,
                                               double omega_scale, double tolerance) {
  const SphereConstants k = make_constants(n);
  std::vector<double> north(n + 1, 0.0);
  north[0] = 1.0;
  const Bubble b{n, SpherePoint{north}, beta};
  const double scale = std::clamp(0.5 * std::sqrt(beta - 1.0), 1e-7, 0.35);
  const double two_star = k.two_star;

  SolutionIdentityReport rep;
  rep.tolerance = tolerance;
  rep.mass = integrate_zonal(
      n, [&](double r) { return std::pow(bubble_value(b, r), two_star); }, rule, scale);
  rep.mass_expected = k.omega_n * omega_scale;
  rep.h1 = integrate_zonal(
      n,
      [&](double r) {
        const double du = bubble_radial_derivative(b, r);
        const double u = bubble_value(b, r);
        return du * du + k.a_n * u * u;
      },
      rule, scale);
  rep.h1_expected = k.a_n * k.omega_n * omega_scale;
  rep.pass = std::abs(rep.mass - rep.mass_expected) <= tolerance * rep.mass_expected &&
             std::abs(rep.h1 - rep.h1_expected) <= tolerance * rep.h1_expected;
  return rep;
}

} // namespace yamabe
