#include "btlab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <mutex>

namespace btlab::kern {

namespace {

// Neumaier-compensated accumulation: the running error term catches the
// low-order bits lost when |acc| and |term| differ widely.
struct Comp {
  double s = 0.0;
  double c = 0.0;
  inline void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  inline double value() const { return s + c; }
};

double dot_scalar(const double* a, const double* b, std::size_t n) {
  Comp acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(a[i] * b[i]);
  return acc.value();
}

double dot3_scalar(const double* a, const double* b, const double* c,
                   std::size_t n) {
  Comp acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(a[i] * b[i] * c[i]);
  return acc.value();
}

double sum_scalar(const double* a, std::size_t n) {
  Comp acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(a[i]);
  return acc.value();
}

}  // namespace

}  // namespace btlab::kern

#if defined(__x86_64__) || defined(_M_X64)
#define BTLAB_HAVE_AVX2_TU 1
namespace btlab::kern {
double dot_avx2(const double*, const double*, std::size_t);
double dot3_avx2(const double*, const double*, const double*, std::size_t);
double sum_avx2(const double*, std::size_t);
}  // namespace btlab::kern
#endif

#if defined(__aarch64__)
#define BTLAB_HAVE_NEON_TU 1
namespace btlab::kern {
double dot_neon(const double*, const double*, std::size_t);
double dot3_neon(const double*, const double*, const double*, std::size_t);
double sum_neon(const double*, std::size_t);
}  // namespace btlab::kern
#endif

namespace btlab::kern {

namespace {

Backend detect_backend() {
  if (const char* env = std::getenv("BTLAB_KERNEL")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
#ifdef BTLAB_HAVE_AVX2_TU
    if (std::strcmp(env, "avx2") == 0 && __builtin_cpu_supports("avx2"))
      return Backend::avx2;
#endif
#ifdef BTLAB_HAVE_NEON_TU
    if (std::strcmp(env, "neon") == 0) return Backend::neon;
#endif
    return Backend::scalar;
  }
#ifdef BTLAB_HAVE_AVX2_TU
  if (__builtin_cpu_supports("avx2")) return Backend::avx2;
#endif
#ifdef BTLAB_HAVE_NEON_TU
  return Backend::neon;
#endif
  return Backend::scalar;
}

std::atomic<Backend> g_backend{Backend::scalar};
std::once_flag g_once;

Backend backend() {
  std::call_once(g_once, [] { g_backend.store(detect_backend()); });
  return g_backend.load();
}

}  // namespace

Backend active_backend() { return backend(); }

const char* backend_name() {
  switch (backend()) {
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
    default:
      return "scalar";
  }
}

void force_backend(Backend b) {
  backend();  // ensure detection ran
  bool ok = (b == Backend::scalar);
#ifdef BTLAB_HAVE_AVX2_TU
  if (b == Backend::avx2 && __builtin_cpu_supports("avx2")) ok = true;
#endif
#ifdef BTLAB_HAVE_NEON_TU
  if (b == Backend::neon) ok = true;
#endif
  g_backend.store(ok ? b : Backend::scalar);
}

double dot(const double* a, const double* b, std::size_t n) {
  switch (backend()) {
#ifdef BTLAB_HAVE_AVX2_TU
    case Backend::avx2:
      return dot_avx2(a, b, n);
#endif
#ifdef BTLAB_HAVE_NEON_TU
    case Backend::neon:
      return dot_neon(a, b, n);
#endif
    default:
      return dot_scalar(a, b, n);
  }
}

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
  switch (backend()) {
#ifdef BTLAB_HAVE_AVX2_TU
    case Backend::avx2:
      return dot3_avx2(a, b, c, n);
#endif
#ifdef BTLAB_HAVE_NEON_TU
    case Backend::neon:
      return dot3_neon(a, b, c, n);
#endif
    default:
      return dot3_scalar(a, b, c, n);
  }
}

double sum(const double* a, std::size_t n) {
  switch (backend()) {
#ifdef BTLAB_HAVE_AVX2_TU
    case Backend::avx2:
      return sum_avx2(a, n);
#endif
#ifdef BTLAB_HAVE_NEON_TU
    case Backend::neon:
      return sum_neon(a, n);
#endif
    default:
      return sum_scalar(a, n);
  }
}

}  // namespace btlab::kern
