#include "yamabe/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace yamabe {

SpherePoint::SpherePoint(std::vector<double> coords) : c(std::move(coords)) {
  if (c.size() < 4) fail(errc::domain, "SpherePoint needs n >= 3 (at least 4 coordinates)");
  double s = 0;
  for (double v : c) s += v * v;
  if (!(s > 0) || !std::isfinite(s)) fail(errc::domain, "SpherePoint: zero or non-finite vector");
  const double inv = 1.0 / std::sqrt(s);
  if (std::abs(inv - 1.0) > 1e-12) {
    for (double& v : c) v *= inv;
  }
}

double sphere_volume(int k) {
  if (k < 1) fail(errc::domain, "sphere_volume: k must be >= 1");
  const double kp = (k + 1) / 2.0;
  return 2.0 * std::pow(std::numbers::pi, kp) / std::tgamma(kp);
}

SphereConstants make_constants(int n) {
  if (n < 3) fail(errc::domain, "constants need n >= 3");
  SphereConstants sc;
  sc.n = n;
  sc.omega_n = sphere_volume(n);
  sc.omega_nm1 = sphere_volume(n - 1);
  sc.a_n = n * (n - 2) / 4.0;
  sc.two_star = 2.0 * n / (n - 2);
  sc.c_n = (n - 2) / 4.0 * sc.omega_n;
  return sc;
}

double dot(const SpherePoint& p, const SpherePoint& q) {
  if (p.c.size() != q.c.size()) fail(errc::dimension_mismatch, "dot: dimension mismatch");
  double s = 0;
  for (size_t i = 0; i < p.c.size(); ++i) s += p.c[i] * q.c[i];
  return s;
}

double geodesic_distance(const SpherePoint& p, const SpherePoint& q) {
  return std::acos(std::clamp(dot(p, q), -1.0, 1.0));
}

namespace {

// Deterministic orthonormal basis of pole^perp: columns 1..n of the Householder
// reflection H = I - 2vv^T/|v|^2 with v = pole - e0 (H maps e0 to pole).
struct Frame {
  explicit Frame(const SpherePoint& pole) : p(pole.c), v(pole.c) {
    v[0] -= 1.0;
    vv = 0;
    for (double x : v) vv += x * x;
  }
  // column j in {1..n} of H
  void column(int j, std::vector<double>& out) const {
    out.assign(p.size(), 0.0);
    out[j] = 1.0;
    if (vv > 1e-30) {
      const double f = 2.0 * v[j] / vv;
      for (size_t i = 0; i < p.size(); ++i) out[i] -= f * v[i];
    }
  }
  std::vector<double> p, v;
  double vv;
};

} // namespace

std::vector<double> stereographic_forward(const SpherePoint& pole, const SpherePoint& q) {
  const int n = pole.n();
  if (q.n() != n) fail(errc::dimension_mismatch, "stereographic_forward: dimension mismatch");
  const double r = geodesic_distance(pole, q);
  if (r < 1e-9) fail(errc::singularity, "stereographic_forward: q at the projection pole");
  std::vector<double> x(n, 0.0);
  const double sr = std::sin(r);
  if (sr < 1e-15) return x; // antipode -> origin
  // tangential unit direction t with q = cos(r) pole + sin(r) t; x = cot(r/2) * coords of t
  const double cr = std::cos(r);
  const double scale = (1.0 + cr) / (sr * sr); // cot(r/2)/sin(r) = (1+cos r)/sin^2 r
  Frame F(pole);
  std::vector<double> col;
  for (int j = 1; j <= n; ++j) {
    F.column(j, col);
    double t = 0;
    for (size_t i = 0; i < col.size(); ++i) t += col[i] * (q.c[i] - cr * pole.c[i]);
    x[j - 1] = scale * t;
  }
  return x;
}

SpherePoint stereographic_inverse(const SpherePoint& pole, const std::vector<double>& x) {
  const int n = pole.n();
  if (static_cast<int>(x.size()) != n) fail(errc::dimension_mismatch, "stereographic_inverse: dimension mismatch");
  double nx2 = 0;
  for (double v : x) nx2 += v * v;
  // |x| = cot(r/2)  =>  cos r = (|x|^2-1)/(|x|^2+1), sin r = 2|x|/(|x|^2+1)
  const double cr = (nx2 - 1.0) / (nx2 + 1.0);
  const double sr_over_nx = 2.0 / (nx2 + 1.0); // sin(r)/|x|
  std::vector<double> q(pole.c.size());
  Frame F(pole);
  std::vector<double> col;
  for (size_t i = 0; i < q.size(); ++i) q[i] = cr * pole.c[i];
  for (int j = 1; j <= n; ++j) {
    F.column(j, col);
    const double t = sr_over_nx * x[j - 1];
    for (size_t i = 0; i < q.size(); ++i) q[i] += t * col[i];
  }
  return SpherePoint(std::move(q));
}

double conformal_factor(const std::vector<double>& x) {
  double nx2 = 0;
  for (double v : x) nx2 += v * v;
  const double d = 1.0 + nx2;
  return 4.0 / (d * d);
}

} // namespace yamabe
