#ifndef BTLAB_TESTS_ORACLES_HPP
#define BTLAB_TESTS_ORACLES_HPP

// Test-only oracles, independent of the production assembly path:
// closed-form Beta integrals, exact model spectra, and finite-difference /
// flow-integration checks. Frozen values asserted in the suites are computed
// through these.

#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

using cplx = std::complex<double>;

// Int_0^inf t^m (1+t)^{-(N+2)} dt = B(m+1, N+1-m) = m! (N-m)! / (N+1)!
inline double beta_radial(int m, int N) {
  return std::exp(std::lgamma(m + 1.0) + std::lgamma(N - m + 1.0) -
                  std::lgamma(N + 2.0));
}

// Gram diagonal <z^m, z^m> = 2 pi m! (N-m)! / (N+1)!
inline double gram_diag(int m, int N) {
  return 2.0 * 3.14159265358979323846 * beta_radial(m, N);
}

// diagonal of T(x3) in the orthonormal monomial basis
inline double tx3_diag(int m, int N) { return double(N - 2 * m) / (N + 2); }

// off-diagonal <m+1| T(x1) |m>
inline double tx1_offdiag(int m, int N) {
  return std::sqrt(double(m + 1) * double(N - m)) / (N + 2);
}

// diagonal of T(x3^2)
inline double tx3sq_diag(int m, int N) {
  double j = N - 2.0 * m;
  return (j * j + N + 2.0) / (double(N + 2) * double(N + 3));
}

// exact spectra of the geometric quantization of x3
inline double q_x3_eig_delta(int k, int j) { return 1.0 - (2.0 * j + 1.0) / k; }
inline double q_x3_eig_trivial(int k, int m) {
  return double(k + 1) * double(k - 2 * m) / (double(k) * double(k + 2));
}

// plain Toeplitz spectrum of x3 (N = k + deg K)
inline double t_x3_eig(int N, int m) { return tx3_diag(m, N); }

// central finite differences for d_z = (d_x - i d_y)/2
inline cplx fd_dz(const std::function<double(cplx)>& f, cplx z,
                  double h = 1e-5) {
  double fx = (f(z + h) - f(z - h)) / (2 * h);
  double fy = (f(z + cplx(0, h)) - f(z - cplx(0, h))) / (2 * h);
  return 0.5 * cplx(fx, -fy);
}

// finite-difference holomorphic Laplacian (1+t)^2 d_z d_zbar f
inline double fd_laplacian(const std::function<double(cplx)>& f, cplx z,
                           double h = 1e-4) {
  double lap_flat = (f(z + h) + f(z - h) + f(z + cplx(0, h)) +
                     f(z - cplx(0, h)) - 4.0 * f(z)) /
                    (h * h);
  double t = std::norm(z);
  return 0.25 * lap_flat * (1.0 + t) * (1.0 + t);
}

// Poisson bracket through the Hamiltonian flow: integrate zdot = X_f(z)
// one RK4 step of size h and difference g along the trajectory. X_f is
// built from finite differences of f only.
inline double flow_bracket(const std::function<double(cplx)>& f,
                           const std::function<double(cplx)>& g, cplx z,
                           double h = 1e-4) {
  auto X = [&f](cplx w) {
    double t = std::norm(w);
    return cplx(0, 1) * (1.0 + t) * (1.0 + t) * std::conj(fd_dz(f, w));
  };
  auto rk4 = [&X](cplx w, double dt) {
    cplx k1 = X(w);
    cplx k2 = X(w + 0.5 * dt * k1);
    cplx k3 = X(w + 0.5 * dt * k2);
    cplx k4 = X(w + dt * k3);
    return w + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };
  return (g(rk4(z, h)) - g(rk4(z, -h))) / (2 * h);
}

}  // namespace oracle

#endif
