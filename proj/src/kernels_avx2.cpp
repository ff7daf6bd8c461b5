// AVX2 variants of the reduction kernels. Compiled with -mavx2 in its own
// translation unit; only reached after the runtime cpu check in kernels.cpp.
#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

namespace btlab::kern {

namespace {

// 4-lane Neumaier accumulator; lanes are merged with the same compensated
// rule so the result is deterministic for a fixed n.
struct Comp4 {
  __m256d s = _mm256_setzero_pd();
  __m256d c = _mm256_setzero_pd();
  inline void add(__m256d x) {
    __m256d t = _mm256_add_pd(s, x);
    __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d sa = _mm256_and_pd(s, abs_mask);
    __m256d xa = _mm256_and_pd(x, abs_mask);
    __m256d big_first = _mm256_add_pd(_mm256_sub_pd(s, t), x);
    __m256d small_first = _mm256_add_pd(_mm256_sub_pd(x, t), s);
    __m256d corr = _mm256_blendv_pd(small_first, big_first,
                                    _mm256_cmp_pd(sa, xa, _CMP_GE_OQ));
    c = _mm256_add_pd(c, corr);
    s = t;
  }
  inline double value(double tail_s, double tail_c) const {
    alignas(32) double sv[4], cv[4];
    _mm256_store_pd(sv, s);
    _mm256_store_pd(cv, c);
    double acc = 0.0, comp = 0.0;
    auto fold = [&](double x) {
      double t = acc + x;
      if (std::abs(acc) >= std::abs(x))
        comp += (acc - t) + x;
      else
        comp += (x - t) + acc;
      acc = t;
    };
    for (int i = 0; i < 4; ++i) fold(sv[i]);
    for (int i = 0; i < 4; ++i) fold(cv[i]);
    fold(tail_s);
    fold(tail_c);
    return acc + comp;
  }
};

struct CompS {
  double s = 0.0, c = 0.0;
  inline void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
};

}  // namespace

double dot_avx2(const double* a, const double* b, std::size_t n) {
  Comp4 acc;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc.add(_mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  CompS tail;
  for (; i < n; ++i) tail.add(a[i] * b[i]);
  return acc.value(tail.s, tail.c);
}

double dot3_avx2(const double* a, const double* b, const double* c,
                 std::size_t n) {
  Comp4 acc;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d p = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc.add(_mm256_mul_pd(p, _mm256_loadu_pd(c + i)));
  }
  CompS tail;
  for (; i < n; ++i) tail.add(a[i] * b[i] * c[i]);
  return acc.value(tail.s, tail.c);
}

double sum_avx2(const double* a, std::size_t n) {
  Comp4 acc;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc.add(_mm256_loadu_pd(a + i));
  CompS tail;
  for (; i < n; ++i) tail.add(a[i]);
  return acc.value(tail.s, tail.c);
}

}  // namespace btlab::kern

#endif
