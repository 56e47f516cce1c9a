#include "yamabe/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace yamabe::kernels {

namespace detail {

// (beta - t)^{+(n-2)/2} via sqrt/mul chain; n >= 3.
// n odd:  p = sqrt(y) * y^{(n-3)/2};  n even: p = y^{(n-2)/2}.
static inline double half_pow(double y, int n) {
  double p;
  int k;
  if (n & 1) {
    p = std::sqrt(y);
    k = (n - 3) / 2;
  } else {
    p = y;
    k = (n - 4) / 2;
  }
  for (int i = 0; i < k; ++i) p = p * y;
  return p;
}

void bubble_values_generic(const double* t, std::size_t len, int n, double beta, double cb,
                           double* F) {
  for (std::size_t i = 0; i < len; ++i) {
    const double y = beta - t[i];
    F[i] = cb / half_pow(y, n);
  }
}

void bubble_terms_generic(const double* t, std::size_t len, int n, double beta, double cb,
                          double* F, double* dF) {
  const double he = 0.5 * (n - 2);
  for (std::size_t i = 0; i < len; ++i) {
    const double y = beta - t[i];
    const double f = cb / half_pow(y, n);
    F[i] = f;
    dF[i] = (f * he) / y;
  }
}

} // namespace detail

double bubble_value_scalar(double t, int n, double beta, double cb) {
  return cb / detail::half_pow(beta - t, n);
}

namespace {

using terms_fn = void (*)(const double*, std::size_t, int, double, double, double*, double*);
using values_fn = void (*)(const double*, std::size_t, int, double, double, double*);

struct Dispatch {
  Backend backend = Backend::generic;
  terms_fn terms = detail::bubble_terms_generic;
  values_fn values = detail::bubble_values_generic;
};

bool avx2_available() {
#if defined(YAMABE_HAVE_AVX2_TU) && defined(__x86_64__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Dispatch make_default() {
  Dispatch d;
  bool want_avx2 = avx2_available();
  if (const char* env = std::getenv("YAMABE_KERNEL")) {
    if (std::strcmp(env, "generic") == 0) want_avx2 = false;
    if (std::strcmp(env, "avx2") == 0) want_avx2 = avx2_available();
  }
#if defined(YAMABE_HAVE_AVX2_TU)
  if (want_avx2) {
    d.backend = Backend::avx2;
    d.terms = detail::bubble_terms_avx2;
    d.values = detail::bubble_values_avx2;
  }
#else
  (void)want_avx2;
#endif
  return d;
}

Dispatch& dispatch() {
  static Dispatch d = make_default();
  return d;
}

} // namespace

Backend active_backend() { return dispatch().backend; }

bool set_backend(Backend b) {
  if (b == Backend::avx2) {
#if defined(YAMABE_HAVE_AVX2_TU)
    if (!avx2_available()) return false;
    dispatch().backend = Backend::avx2;
    dispatch().terms = detail::bubble_terms_avx2;
    dispatch().values = detail::bubble_values_avx2;
    return true;
#else
    return false;
#endif
  }
  dispatch().backend = Backend::generic;
  dispatch().terms = detail::bubble_terms_generic;
  dispatch().values = detail::bubble_values_generic;
  return true;
}

std::string backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "generic"; }

void bubble_terms(const double* t, std::size_t len, int n, double beta, double cb,
                  double* F, double* dF) {
  dispatch().terms(t, len, n, beta, cb, F, dF);
}

void bubble_values(const double* t, std::size_t len, int n, double beta, double cb, double* F) {
  dispatch().values(t, len, n, beta, cb, F);
}

double pairwise_sum(const double* x, std::size_t len) {
  if (len <= 8) {
    double s = 0;
    for (std::size_t i = 0; i < len; ++i) s += x[i];
    return s;
  }
  const std::size_t h = len / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, len - h);
}

double pairwise_dot(const double* x, const double* w, std::size_t len) {
  if (len <= 8) {
    double s = 0;
    for (std::size_t i = 0; i < len; ++i) s += x[i] * w[i];
    return s;
  }
  const std::size_t h = len / 2;
  return pairwise_dot(x, w, h) + pairwise_dot(x + h, w + h, len - h);
}

} // namespace yamabe::kernels
