#ifndef BTLAB_KERNELS_HPP
#define BTLAB_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <string>

// Reduction kernels used by the quadrature and matrix-assembly inner loops.
// A compensated scalar implementation is the reference; AVX2 / NEON variants
// are selected at runtime and must agree with the reference to 1e-12 relative
// (see tests/test_kernels.cpp). All results are deterministic for a fixed
// backend and input length.
namespace btlab::kern {

enum class Backend { scalar, avx2, neon };

Backend active_backend();
const char* backend_name();

// Overrides runtime dispatch (tests, BTLAB_KERNEL=scalar|avx2|neon env var).
// Requesting an unsupported backend falls back to scalar.
void force_backend(Backend b);

// sum_i a[i] * b[i], compensated.
double dot(const double* a, const double* b, std::size_t n);

// sum_i a[i] * b[i] * c[i], compensated.
double dot3(const double* a, const double* b, const double* c, std::size_t n);

// sum_i a[i], compensated.
double sum(const double* a, std::size_t n);

// sum_i w[i] * v[i] with complex v stored as split arrays, via dot().
inline std::complex<double> wdot_split(const double* w, const double* vre,
                                       const double* vim, std::size_t n) {
  return {dot(w, vre, n), dot(w, vim, n)};
}

}  // namespace btlab::kern

#endif
