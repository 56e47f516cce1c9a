#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace yamabe {

// Deterministic Gaussian source: explicit Box-Muller over mt19937_64 bits.
// (std::normal_distribution is implementation-defined; this must be stable.)
class GaussianSource {
public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    // u1 in (0,1], u2 in [0,1)
    const double u1 = ((rng_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = (rng_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_ = true;
    return r * std::cos(a);
  }

  std::vector<double> unit_vector(int dim) {
    std::vector<double> v(dim);
    double s2 = 0;
    do {
      s2 = 0;
      for (auto& x : v) {
        x = (*this)();
        s2 += x * x;
      }
    } while (s2 < 1e-290);
    const double inv = 1.0 / std::sqrt(s2);
    for (auto& x : v) x *= inv;
    return v;
  }

private:
  std::mt19937_64 rng_;
  double spare_ = 0;
  bool have_ = false;
};

} // namespace yamabe
