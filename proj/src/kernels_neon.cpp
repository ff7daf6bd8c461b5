// NEON variants of the reduction kernels (aarch64).
#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>
#include <cstddef>

namespace btlab::kern {

namespace {

struct Comp2 {
  float64x2_t s = vdupq_n_f64(0.0);
  float64x2_t c = vdupq_n_f64(0.0);
  inline void add(float64x2_t x) {
    float64x2_t t = vaddq_f64(s, x);
    uint64x2_t ge = vcgeq_f64(vabsq_f64(s), vabsq_f64(x));
    float64x2_t big_first = vaddq_f64(vsubq_f64(s, t), x);
    float64x2_t small_first = vaddq_f64(vsubq_f64(x, t), s);
    float64x2_t corr = vbslq_f64(ge, big_first, small_first);
    c = vaddq_f64(c, corr);
    s = t;
  }
  inline double value(double tail_s, double tail_c) const {
    double sv[2], cv[2];
    vst1q_f64(sv, s);
    vst1q_f64(cv, c);
    double acc = 0.0, comp = 0.0;
    auto fold = [&](double x) {
      double t = acc + x;
      if (std::abs(acc) >= std::abs(x))
        comp += (acc - t) + x;
      else
        comp += (x - t) + acc;
      acc = t;
    };
    fold(sv[0]);
    fold(sv[1]);
    fold(cv[0]);
    fold(cv[1]);
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

double dot_neon(const double* a, const double* b, std::size_t n) {
  Comp2 acc;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc.add(vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  CompS tail;
  for (; i < n; ++i) tail.add(a[i] * b[i]);
  return acc.value(tail.s, tail.c);
}

double dot3_neon(const double* a, const double* b, const double* c,
                 std::size_t n) {
  Comp2 acc;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t p = vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    acc.add(vmulq_f64(p, vld1q_f64(c + i)));
  }
  CompS tail;
  for (; i < n; ++i) tail.add(a[i] * b[i] * c[i]);
  return acc.value(tail.s, tail.c);
}

double sum_neon(const double* a, std::size_t n) {
  Comp2 acc;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc.add(vld1q_f64(a + i));
  CompS tail;
  for (; i < n; ++i) tail.add(a[i]);
  return acc.value(tail.s, tail.c);
}

}  // namespace btlab::kern

#endif
