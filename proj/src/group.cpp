#include "yamabe/group.hpp"

#include <cmath>
#include <numbers>

#include "yamabe/rng.hpp"

namespace yamabe {

namespace {

Eigen::MatrixXd rotation(int n, double ang) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n + 1, n + 1);
  const double c = std::cos(ang), s = std::sin(ang);
  M(0, 0) = c; M(0, 1) = -s; M(1, 0) = s; M(1, 1) = c;
  M(2, 2) = c; M(2, 3) = -s; M(3, 2) = s; M(3, 3) = c;
  return M;
}

Eigen::MatrixXd tau_matrix(int n) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1, n + 1);
  // (z1,z2,x) -> (-conj z2, conj z1, x)
  M(0, 2) = -1; M(1, 3) = 1; M(2, 0) = 1; M(3, 1) = -1;
  for (int k = 4; k <= n; ++k) M(k, k) = 1;
  return M;
}

int generated_order_of(const std::vector<Eigen::MatrixXd>& gens, int n, int cap) {
  std::vector<Eigen::MatrixXd> seen{Eigen::MatrixXd::Identity(n + 1, n + 1)};
  std::size_t head = 0;
  while (head < seen.size()) {
    const Eigen::MatrixXd cur = seen[head++];
    for (const auto& g : gens) {
      Eigen::MatrixXd p = g * cur;
      bool found = false;
      for (const auto& s : seen)
        if ((s - p).cwiseAbs().maxCoeff() < 1e-9) { found = true; break; }
      if (!found) {
        seen.push_back(std::move(p));
        if (static_cast<int>(seen.size()) > cap)
          fail(errc::assumption, "generated group exceeds expected order cap");
      }
    }
  }
  return static_cast<int>(seen.size());
}

} // namespace

SymmetryGroup build_gamma_m(int n, int m) {
  if (n < 3) fail(errc::domain, "build_gamma_m: the C x C x R^{n-3} splitting needs n >= 3");
  if (m < 1) fail(errc::domain, "build_gamma_m: m >= 1 required");
  SymmetryGroup G;
  G.n = n;
  G.m = m;
  const Eigen::MatrixXd T = tau_matrix(n);
  for (int j = 0; j < m; ++j)
    G.elements.push_back({rotation(n, 2.0 * std::numbers::pi * j / m), +1});
  for (int j = 0; j < m; ++j)
    G.elements.push_back({T * G.elements[j].M, -1});

  for (const auto& e : G.elements) {
    const double defect = (e.M.transpose() * e.M - Eigen::MatrixXd::Identity(n + 1, n + 1))
                              .cwiseAbs().maxCoeff();
    if (defect > 1e-12) fail(errc::numerical, "build_gamma_m: element not orthogonal");
  }

  // Generator-stability of the listing decides its closure (it contains the identity,
  // and a finite set containing 1 that is stable under the generators is the whole
  // generated group).  Matching also verifies that signs multiply.
  auto find_signed = [&](const Eigen::MatrixXd& A, int want_sign) {
    for (const auto& e : G.elements)
      if ((e.M - A).cwiseAbs().maxCoeff() < 1e-10) return e.sign == want_sign;
    return false;
  };
  const Eigen::MatrixXd R1 = G.elements[m > 1 ? 1 : 0].M;
  bool closed = true;
  for (const auto& e : G.elements) {
    if (!find_signed(T * e.M, -e.sign) || (m > 1 && !find_signed(R1 * e.M, e.sign))) {
      closed = false;
      break;
    }
  }
  G.listing_closed = closed;
  G.generated_order = generated_order_of({R1, T}, n, 4 * m + 4);
  return G;
}

SpherePoint apply(const SignedIsometry& gamma, const SpherePoint& p) {
  if (gamma.M.cols() != static_cast<long>(p.c.size()))
    fail(errc::dimension_mismatch, "apply: dimension mismatch");
  Eigen::Map<const Eigen::VectorXd> v(p.c.data(), p.c.size());
  Eigen::VectorXd w = gamma.M * v;
  return SpherePoint(std::vector<double>(w.data(), w.data() + w.size()));
}

SignedOrbit orbit(const SymmetryGroup& G, const SpherePoint& p) {
  if (p.n() != G.n) fail(errc::dimension_mismatch, "orbit: dimension mismatch");
  std::vector<SpherePoint> plus, minus;
  auto seen = [&](const SpherePoint& q) {
    for (const auto& r : plus)
      if (geodesic_distance(q, r) < 1e-9) return true;
    for (const auto& r : minus)
      if (geodesic_distance(q, r) < 1e-9) return true;
    return false;
  };
  for (const auto& e : G.elements) {
    SpherePoint q = apply(e, p);
    if (!seen(q)) (e.sign > 0 ? plus : minus).push_back(std::move(q));
  }
  const int total = static_cast<int>(plus.size() + minus.size());
  if (total == 1)
    return SignedOrbit{{}, {}, p};
  if (total != 2 * G.m || static_cast<int>(plus.size()) != G.m)
    fail(errc::assumption,
         "assumption (A1) violated: orbit cardinality " + std::to_string(total) +
             " is neither 1 nor 2m");
  return SignedOrbit{std::move(plus), std::move(minus), p};
}

AssumptionReport check_assumptions(const SymmetryGroup& G) {
  AssumptionReport rep;
  const int n = G.n, m = G.m;

  int npos = 0, nneg = 0;
  for (const auto& e : G.elements) (e.sign > 0 ? npos : nneg)++;
  rep.A2 = (npos == m && nneg == m);

  // Structural A1: fixed spaces of non-identity elements lie in {z1=z2=0}, and the
  // listing acts as the identity there.
  bool a1 = true;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n + 1, n + 1);
  for (const auto& e : G.elements) {
    if ((e.M - I).cwiseAbs().maxCoeff() < 1e-12) continue;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(e.M - I);
    lu.setThreshold(1e-9);
    const Eigen::MatrixXd K = lu.kernel(); // at least one column even for trivial kernel
    for (long c = 0; c < K.cols(); ++c) {
      const double colnorm = K.col(c).norm();
      if (colnorm < 1e-12) continue;
      if (K.col(c).head(4).cwiseAbs().maxCoeff() > 1e-9 * colnorm) a1 = false;
    }
    // identity action on the x-block
    if (n >= 4 && (e.M.bottomRightCorner(n - 3, n - 3) - Eigen::MatrixXd::Identity(n - 3, n - 3))
                          .cwiseAbs().maxCoeff() > 1e-12) a1 = false;
    if (n >= 4 && (e.M.bottomLeftCorner(n - 3, 4).cwiseAbs().maxCoeff() > 1e-12 ||
                   e.M.topRightCorner(4, n - 3).cwiseAbs().maxCoeff() > 1e-12)) a1 = false;
  }

  // Secondary smoke test: random + coordinate-pattern points obey the dichotomy.
  GaussianSource gs(1234567u);
  auto orbit_ok = [&](const SpherePoint& p) {
    const SignedOrbit o = orbit(G, p);
    return o.is_fixed_point() || o.m() == m;
  };
  for (int k = 0; a1 && k < 1000; ++k) orbit_ok(SpherePoint(gs.unit_vector(n + 1)));
  std::vector<std::vector<double>> special;
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1; special.push_back(e);                      // z2 = 0, x = 0
  e.assign(n + 1, 0.0); e[2] = 1; special.push_back(e); // z1 = 0, x = 0
  e.assign(n + 1, 0.0); e[n] = 1; special.push_back(e); // z1 = z2 = 0
  e.assign(n + 1, 0.0); e[0] = e[2] = std::numbers::sqrt2 / 2; special.push_back(e);
  e.assign(n + 1, 0.0); e[1] = e[n] = std::numbers::sqrt2 / 2; special.push_back(e);
  for (const auto& s : special)
    if (!orbit_ok(SpherePoint(s))) a1 = false;
  rep.A1 = a1;

  // A0 witness: base point with z2 = x = 0 has a free orbit, so its isotropy in the
  // listing is trivial and in particular lies in the kernel of the sign map.
  std::vector<double> w(n + 1, 0.0);
  w[0] = 1.0;
  const SignedOrbit ow = orbit(G, SpherePoint(w));
  rep.A0 = !ow.is_fixed_point() && ow.m() == m;
  rep.witness = rep.A0 ? "p0 = (1,0,0): free orbit of size 2m, trivial isotropy" : "";
  return rep;
}

bool is_equivariant(const SymmetryGroup& G,
                    const std::function<double(const SpherePoint&)>& f,
                    int sample_count, std::uint64_t seed) {
  if (sample_count < 1) fail(errc::domain, "is_equivariant: sample_count >= 1");
  GaussianSource gs(seed);
  for (int k = 0; k < sample_count; ++k) {
    const SpherePoint p(gs.unit_vector(G.n + 1));
    const double fp = f(p);
    for (const auto& e : G.elements) {
      const double fg = f(apply(e, p));
      if (std::abs(fg - e.sign * fp) > 1e-9 * (1.0 + std::abs(fp))) return false;
    }
  }
  return true;
}

} // namespace yamabe
