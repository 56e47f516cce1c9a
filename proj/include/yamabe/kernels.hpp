#pragma once

#include <cstddef>
#include <string>

namespace yamabe::kernels {

enum class Backend { generic, avx2 };

Backend active_backend();
bool set_backend(Backend b); // false if b is not available on this machine
std::string backend_name(Backend b);

// Bubble profile on a batch of inner products t[i] (= cos of the distance to the center):
//   F[i]  = cb * (beta - t[i])^{-(n-2)/2}
//   dF[i] = F[i] * (n-2)/2 / (beta - t[i])
// The half-integer power is evaluated with mul/div/sqrt only, in an operation order shared
// by every backend, so results are bitwise identical across generic and SIMD paths.
void bubble_terms(const double* t, std::size_t len, int n, double beta, double cb,
                  double* F, double* dF);
void bubble_values(const double* t, std::size_t len, int n, double beta, double cb, double* F);

// Scalar reference for a single inner product (same operation order as the batches).
double bubble_value_scalar(double t, int n, double beta, double cb);

// Deterministic blocked pairwise reduction (fixed split order, independent of backend).
double pairwise_sum(const double* x, std::size_t len);
double pairwise_dot(const double* x, const double* w, std::size_t len);

namespace detail {
void bubble_terms_generic(const double* t, std::size_t len, int n, double beta, double cb,
                          double* F, double* dF);
void bubble_values_generic(const double* t, std::size_t len, int n, double beta, double cb,
                           double* F);
#if defined(YAMABE_HAVE_AVX2_TU)
void bubble_terms_avx2(const double* t, std::size_t len, int n, double beta, double cb,
                       double* F, double* dF);
void bubble_values_avx2(const double* t, std::size_t len, int n, double beta, double cb,
                        double* F);
#endif
} // namespace detail

} // namespace yamabe::kernels
