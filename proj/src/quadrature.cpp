#include "yamabe/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "yamabe/error.hpp"
#include "yamabe/rng.hpp"

namespace yamabe {

namespace {

constexpr double kPi = 3.14159265358979323846;

int panel_order(const QuadratureRule& rule) {
  return std::clamp(rule.resolution / 4, 6, 32);
}

// Geometric edge ladder: first panel has width start_width at a, widths double
// toward b, last edge clamped to b.  start_width >= b-a yields a single panel.
void ladder_edges(double a, double b, double start_width, std::vector<double>& edges) {
  edges.push_back(a);
  double x = a, w = start_width;
  while (x + w < b - 1e-15 * (1.0 + std::abs(b))) {
    x += w;
    edges.push_back(x);
    w *= 2.0;
  }
  edges.push_back(b);
}

std::vector<double> make_edges(double a, double b, double start_width, bool two_sided) {
  std::vector<double> edges;
  if (!two_sided) {
    ladder_edges(a, b, start_width, edges);
    return edges;
  }
  const double mid = 0.5 * (a + b);
  ladder_edges(a, mid, start_width, edges);
  for (std::size_t i = edges.size() - 1; i-- > 0;) {
    edges.push_back(a + b - edges[i]);
  }
  return edges;
}

double axis_weighted_sum(const Axis& ax, const std::function<double(double)>& g) {
  std::vector<double> terms(ax.nodes.size());
  for (std::size_t i = 0; i < ax.nodes.size(); ++i) {
    terms[i] = ax.weights[i] * g(ax.nodes[i]);
  }
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

// Every deterministic rule must reproduce the volume of its own domain from the
// bare weights; a grading or measure bug shows up here before it can bias results.
void require_calibrated(double got, double want, double tol, const char* what) {
  if (!(std::abs(got - want) <= tol * std::abs(want))) {
    fail(errc::numerical, std::string(what) + " calibration failed: weight sum " +
                              std::to_string(got) + " vs " + std::to_string(want));
  }
}

void require_finite(double v, const char* where, double at) {
  if (!std::isfinite(v)) {
    fail(errc::numerical, std::string("non-finite integrand in ") + where + " at " +
                              std::to_string(at));
  }
}

} // namespace

QuadratureRule make_rule(QuadratureRule::Kind kind, int resolution, std::uint64_t seed,
                         double reported_tolerance) {
  if (resolution < 2) fail(errc::domain, "quadrature resolution must be at least 2");
  if (kind == QuadratureRule::Kind::monte_carlo && resolution < 16) {
    fail(errc::domain, "monte_carlo rule needs at least 16 samples");
  }
  if (!(reported_tolerance > 0.0)) fail(errc::domain, "reported_tolerance must be positive");
  QuadratureRule rule;
  rule.kind = kind;
  rule.resolution = resolution;
  rule.seed = seed;
  rule.reported_tolerance = reported_tolerance;
  return rule;
}

const GaussLegendre& gauss_legendre(int order) {
  if (order < 1 || order > 256) fail(errc::domain, "gauss_legendre order out of range");
  static std::map<int, GaussLegendre> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  GaussLegendre g;
  g.x.assign(order, 0.0);
  g.w.assign(order, 0.0);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double p1 = 0.0, p2 = 0.0, dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      p1 = 1.0;
      p2 = 0.0;
      for (int k = 0; k < order; ++k) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2 * k + 1) * x * p2 - k * p3) / (k + 1);
      }
      dp = order * (x * p1 - p2) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15 * (1.0 + std::abs(x))) break;
    }
    // refresh P'_order at the converged root for the weight formula
    p1 = 1.0;
    p2 = 0.0;
    for (int k = 0; k < order; ++k) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2 * k + 1) * x * p2 - k * p3) / (k + 1);
    }
    dp = order * (x * p1 - p2) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.x[i] = -x;
    g.x[order - 1 - i] = x;
    g.w[i] = w;
    g.w[order - 1 - i] = w;
  }
  auto [pos, inserted] = cache.emplace(order, std::move(g));
  (void)inserted;
  return pos->second;
}

Axis graded_axis(double a, double b, double start_width, int order, bool two_sided) {
  if (!(b > a)) fail(errc::domain, "graded_axis needs b > a");
  if (!(start_width > 0.0)) fail(errc::domain, "graded_axis needs positive start width");
  const GaussLegendre& gl = gauss_legendre(order);
  const std::vector<double> edges = make_edges(a, b, start_width, two_sided);
  Axis ax;
  ax.nodes.reserve((edges.size() - 1) * gl.x.size());
  ax.weights.reserve((edges.size() - 1) * gl.x.size());
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double lo = edges[p], hi = edges[p + 1];
    const double half = 0.5 * (hi - lo), midp = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      ax.nodes.push_back(midp + half * gl.x[i]);
      ax.weights.push_back(half * gl.w[i]);
    }
  }
  return ax;
}

double integrate_zonal(int n, const std::function<double(double)>& f,
                       const QuadratureRule& rule, double peak_scale) {
  if (n < 3) fail(errc::domain, "integrate_zonal needs n >= 3");
  const double s = std::clamp(peak_scale, 1e-7, 0.35);
  const Axis ax = graded_axis(0.0, kPi, s, panel_order(rule));

  const double measure = axis_weighted_sum(
      ax, [n](double r) { return std::pow(std::sin(r), n - 1); });
  require_calibrated(sphere_volume(n - 1) * measure, sphere_volume(n), 1e-9,
                     "integrate_zonal");

  std::vector<double> terms(ax.nodes.size());
  for (std::size_t i = 0; i < ax.nodes.size(); ++i) {
    const double r = ax.nodes[i];
    const double v = f(r);
    require_finite(v, "integrate_zonal", r);
    terms[i] = ax.weights[i] * v * std::pow(std::sin(r), n - 1);
  }
  double total = 0.0;
  for (double t : terms) total += t;
  return sphere_volume(n - 1) * total;
}

double integrate_bizonal(int n, double theta,
                         const std::function<double(double, double)>& f,
                         const QuadratureRule& rule, double peak_scale) {
  if (n < 3) fail(errc::domain, "integrate_bizonal needs n >= 3");
  if (theta < 0.0 || theta > kPi) fail(errc::domain, "center separation must lie in [0, pi]");
  const double s = std::clamp(peak_scale, 1e-7, 0.35);
  const int order = panel_order(rule);

  // r-ladder graded at both centers: r = 0, and r = theta along psi = 0.
  Axis r_axis;
  if (theta > 1e-12 && theta < kPi - 1e-12) {
    Axis left = graded_axis(0.0, theta, s, order, /*two_sided=*/true);
    Axis right = graded_axis(theta, kPi, s, order, /*two_sided=*/false);
    r_axis.nodes = std::move(left.nodes);
    r_axis.weights = std::move(left.weights);
    r_axis.nodes.insert(r_axis.nodes.end(), right.nodes.begin(), right.nodes.end());
    r_axis.weights.insert(r_axis.weights.end(), right.weights.begin(), right.weights.end());
  } else {
    r_axis = graded_axis(0.0, kPi, s, order, /*two_sided=*/theta > 1.0);
  }
  const Axis psi_axis = graded_axis(0.0, kPi, s, order, /*two_sided=*/false);

  const double mr =
      axis_weighted_sum(r_axis, [n](double r) { return std::pow(std::sin(r), n - 1); });
  const double mp =
      axis_weighted_sum(psi_axis, [n](double p) { return std::pow(std::sin(p), n - 2); });
  require_calibrated(sphere_volume(n - 2) * mr * mp, sphere_volume(n), 1e-9,
                     "integrate_bizonal");

  std::vector<double> slabs(r_axis.nodes.size());
  for (std::size_t i = 0; i < r_axis.nodes.size(); ++i) {
    const double r = r_axis.nodes[i];
    std::vector<double> row(psi_axis.nodes.size());
    for (std::size_t j = 0; j < psi_axis.nodes.size(); ++j) {
      const double psi = psi_axis.nodes[j];
      const double v = f(r, psi);
      require_finite(v, "integrate_bizonal", r);
      row[j] = psi_axis.weights[j] * v * std::pow(std::sin(psi), n - 2);
    }
    double acc = 0.0;
    for (double t : row) acc += t;
    slabs[i] = r_axis.weights[i] * acc * std::pow(std::sin(r), n - 1);
  }
  double total = 0.0;
  for (double t : slabs) total += t;
  return sphere_volume(n - 2) * total;
}

double ball_restricted_zonal(int n, double delta, const std::function<double(double)>& f,
                             const QuadratureRule& rule, bool complement,
                             double peak_scale) {
  if (n < 3) fail(errc::domain, "ball_restricted_zonal needs n >= 3");
  if (!(delta > 0.0 && delta < kPi)) fail(errc::domain, "ball radius must lie in (0, pi)");
  const double s = std::clamp(peak_scale, 1e-7, 0.35);
  const double lo = complement ? delta : 0.0;
  const double hi = complement ? kPi : delta;
  // the integrand peaks at the edge nearest the concentration point r = 0
  const Axis ax = graded_axis(lo, hi, s, panel_order(rule), /*two_sided=*/false);

  std::vector<double> terms(ax.nodes.size());
  for (std::size_t i = 0; i < ax.nodes.size(); ++i) {
    const double r = ax.nodes[i];
    const double v = f(r);
    require_finite(v, "ball_restricted_zonal", r);
    terms[i] = ax.weights[i] * v * std::pow(std::sin(r), n - 1);
  }
  double total = 0.0;
  for (double t : terms) total += t;
  return sphere_volume(n - 1) * total;
}

McResult integrate_mc(int n, const std::function<double(const SpherePoint&)>& f,
                      const QuadratureRule& rule) {
  if (n < 3) fail(errc::domain, "integrate_mc needs n >= 3");
  const std::size_t count = static_cast<std::size_t>(rule.resolution);
  GaussianSource source(rule.seed);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const SpherePoint p{source.unit_vector(n + 1)};
    const double v = f(p);
    if (!std::isfinite(v)) {
      fail(errc::numerical,
           "non-finite integrand in integrate_mc at sample " + std::to_string(k));
    }
    sum += v;
    sum_sq += v * v;
  }
  const double vol = sphere_volume(n);
  const double mean = sum / static_cast<double>(count);
  const double var =
      std::max(0.0, (sum_sq - mean * sum) / static_cast<double>(count - 1));
  McResult out;
  out.estimate = vol * mean;
  out.std_error = vol * std::sqrt(var / static_cast<double>(count));
  return out;
}

double integrate_product_grid(int n, const std::function<double(const SpherePoint&)>& f,
                              const QuadratureRule& rule) {
  if (n < 3 || n > 5) fail(errc::domain, "integrate_product_grid supports 3 <= n <= 5 only");
  const int res = std::clamp(rule.resolution, 4, 64);
  const GaussLegendre& gl = gauss_legendre(res);

  // iterated angles: theta_1..theta_{n-1} on [0,pi] by GL, final phi periodic by midpoint
  std::vector<std::vector<double>> nodes(n - 1), weights(n - 1);
  for (int a = 0; a < n - 1; ++a) {
    nodes[a].resize(gl.x.size());
    weights[a].resize(gl.x.size());
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      nodes[a][i] = 0.5 * kPi * (gl.x[i] + 1.0);
      weights[a][i] = 0.5 * kPi * gl.w[i];
    }
  }
  std::vector<double> phi_nodes(res), phi_weights(res, 2.0 * kPi / res);
  for (int i = 0; i < res; ++i) phi_nodes[i] = (i + 0.5) * (2.0 * kPi / res);

  // separability makes the bare-weight volume check cheap
  double weight_product = 2.0 * kPi;
  for (int a = 0; a < n - 1; ++a) {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes[a].size(); ++i) {
      s += weights[a][i] * std::pow(std::sin(nodes[a][i]), n - 1 - a);
    }
    weight_product *= s;
  }
  require_calibrated(weight_product, sphere_volume(n), 1e-9, "integrate_product_grid");

  std::vector<double> coords(n + 1, 0.0);
  std::vector<int> idx(n - 1, 0);
  double total = 0.0;
  bool done = false;
  while (!done) {
    double sin_prod = 1.0, w = 1.0;
    for (int a = 0; a < n - 1; ++a) {
      const double t = nodes[a][idx[a]];
      coords[a] = sin_prod * std::cos(t);
      w *= weights[a][idx[a]] * std::pow(std::sin(t), n - 1 - a);
      sin_prod *= std::sin(t);
    }
    for (int i = 0; i < res; ++i) {
      coords[n - 1] = sin_prod * std::cos(phi_nodes[i]);
      coords[n] = sin_prod * std::sin(phi_nodes[i]);
      const SpherePoint p{coords};
      const double v = f(p);
      require_finite(v, "integrate_product_grid", phi_nodes[i]);
      total += w * phi_weights[i] * v;
    }
    int a = n - 2;
    while (a >= 0 && ++idx[a] == static_cast<int>(nodes[a].size())) idx[a--] = 0;
    done = a < 0;
  }
  return total;
}

BiplanarGrid make_biplanar_grid(int n, int m, double beta, int resolution) {
  if (n < 3) fail(errc::domain, "biplanar grid needs n >= 3");
  if (m < 1) fail(errc::domain, "biplanar grid needs m >= 1");
  if (!(beta > 1.0)) fail(errc::domain, "biplanar grid needs beta > 1");
  QuadratureRule rule = make_rule(QuadratureRule::Kind::biplanar, resolution);
  const int order = panel_order(rule);
  const double s = std::clamp(0.5 * std::sqrt(beta - 1.0), 1e-6, 0.35);

  BiplanarGrid g;
  g.n = n;
  g.m = m;
  g.mult = 4.0 * m * m;
  const double cell = kPi / m;
  g.alpha = graded_axis(0.0, cell, std::min(s, 0.5 * cell), order, /*two_sided=*/false);
  g.gamma = g.alpha;
  // centers sit at eta = 0 (first plane) and eta = pi/2 (second plane)
  g.eta = graded_axis(0.0, 0.5 * kPi, s, order, /*two_sided=*/true);
  for (std::size_t i = 0; i < g.eta.nodes.size(); ++i) {
    g.eta.weights[i] *= std::cos(g.eta.nodes[i]) * std::sin(g.eta.nodes[i]);
  }
  if (n == 3) {
    g.fiber = 1.0;
  } else {
    g.fiber = (n == 4) ? 2.0 : sphere_volume(n - 4);
    g.phi = graded_axis(0.0, 0.5 * kPi, s, order, /*two_sided=*/false);
    for (std::size_t i = 0; i < g.phi.nodes.size(); ++i) {
      const double c = std::cos(g.phi.nodes[i]);
      g.phi.weights[i] *= c * c * c * std::pow(std::sin(g.phi.nodes[i]), n - 4);
    }
  }

  auto weight_sum = [](const Axis& ax) {
    double t = 0.0;
    for (double w : ax.weights) t += w;
    return t;
  };
  double vol = g.fiber * g.mult * weight_sum(g.eta) * weight_sum(g.alpha) *
               weight_sum(g.gamma);
  if (n > 3) vol *= weight_sum(g.phi);
  require_calibrated(vol, sphere_volume(n), 1e-9, "make_biplanar_grid");
  return g;
}

} // namespace yamabe
