#include "yamabe/kernels.hpp"

#include <immintrin.h>

// AVX2 lanes execute the exact operation sequence of the generic path
// (sub, optional sqrt, repeated mul, div); every op is correctly rounded,
// so results are bitwise equal to the scalar reference.

namespace yamabe::kernels::detail {

namespace {

inline __m256d half_pow4(__m256d y, int n) {
  __m256d p;
  int k;
  if (n & 1) {
    p = _mm256_sqrt_pd(y);
    k = (n - 3) / 2;
  } else {
    p = y;
    k = (n - 4) / 2;
  }
  for (int i = 0; i < k; ++i) p = _mm256_mul_pd(p, y);
  return p;
}

} // namespace

void bubble_values_avx2(const double* t, std::size_t len, int n, double beta, double cb,
                        double* F) {
  const __m256d vb = _mm256_set1_pd(beta);
  const __m256d vc = _mm256_set1_pd(cb);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d y = _mm256_sub_pd(vb, _mm256_loadu_pd(t + i));
    _mm256_storeu_pd(F + i, _mm256_div_pd(vc, half_pow4(y, n)));
  }
  if (i < len) bubble_values_generic(t + i, len - i, n, beta, cb, F + i);
}

void bubble_terms_avx2(const double* t, std::size_t len, int n, double beta, double cb,
                       double* F, double* dF) {
  const __m256d vb = _mm256_set1_pd(beta);
  const __m256d vc = _mm256_set1_pd(cb);
  const __m256d vh = _mm256_set1_pd(0.5 * (n - 2));
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d y = _mm256_sub_pd(vb, _mm256_loadu_pd(t + i));
    const __m256d f = _mm256_div_pd(vc, half_pow4(y, n));
    _mm256_storeu_pd(F + i, f);
    _mm256_storeu_pd(dF + i, _mm256_div_pd(_mm256_mul_pd(f, vh), y));
  }
  if (i < len) bubble_terms_generic(t + i, len - i, n, beta, cb, F + i, dF + i);
}

} // namespace yamabe::kernels::detail
