#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "yamabe/sphere.hpp"

namespace yamabe {

// Orthogonal matrix with its sign phi(gamma) under the homomorphism phi.
struct SignedIsometry {
  Eigen::MatrixXd M;
  int sign; // +1 or -1
};

// The 2m signed elements {g_1..g_m; tau g_1..tau g_m} with g_j the diagonal
// rotation by 2 pi j / m on both complex factors and tau(z1,z2,x) = (-conj z2, conj z1, x).
//
// tau^2 equals the rotation by pi on each complex factor, so -1 is generated; it lies in
// {g_j} iff m is even.  Consequently the 2m listing is composition-closed exactly for even m;
// for odd m the generated group has order 4m.  Both facts are recorded at construction.
// Every computed quantity (orbits, interaction sums, energies) is a function of the listing.
struct SymmetryGroup {
  int n = 0;
  int m = 0;
  std::vector<SignedIsometry> elements; // size 2m, signs +1 then -1
  bool listing_closed = false;
  int generated_order = 0;
};

struct SignedOrbit {
  std::vector<SpherePoint> plus_points;  // p_j = g_j p
  std::vector<SpherePoint> minus_points; // q_j = tau g_j p
  SpherePoint base;
  bool is_fixed_point() const { return plus_points.empty(); }
  int m() const { return static_cast<int>(plus_points.size()); }
};

struct AssumptionReport {
  bool A0 = false; // free-orbit base point with trivial isotropy exists
  bool A1 = false; // orbit dichotomy: full orbit or fixed point, nothing between
  bool A2 = false; // both signs occur
  std::string witness;
};

SymmetryGroup build_gamma_m(int n, int m);

SpherePoint apply(const SignedIsometry& gamma, const SpherePoint& p);

// Deduplicated orbit with signs; cardinality 1 (fixed point) or 2m, anything else
// violates the dichotomy and raises errc::assumption.
SignedOrbit orbit(const SymmetryGroup& G, const SpherePoint& p);

// A1 is decided structurally: the eigenvalue-1 space of every non-identity element must
// lie in {z1 = z2 = 0}, and every element must fix that subspace pointwise.  A random
// sample plus coordinate-pattern special points serve as a secondary smoke test.
AssumptionReport check_assumptions(const SymmetryGroup& G);

bool is_equivariant(const SymmetryGroup& G,
                    const std::function<double(const SpherePoint&)>& f,
                    int sample_count, std::uint64_t seed = 20240901u);

} // namespace yamabe
