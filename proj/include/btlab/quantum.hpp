#ifndef BTLAB_QUANTUM_HPP
#define BTLAB_QUANTUM_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "btlab/geometry.hpp"

namespace btlab::quantum {

using geom::cplx;
using geom::KahlerModel;
using geom::QuadratureGrid;
using geom::Twist;

// Monomial basis of H_k = holomorphic sections of L^k (x) K in the north
// chart: z^m, m = 0..N, with combined metric weight (1+t)^{-N} against the
// Liouville measure (N = k deg L + deg K).
struct SectionBasis {
  int k;
  Twist twist;
  int N;  // top monomial degree; dim = N + 1
  int dim() const { return N + 1; }
};

SectionBasis basis(const KahlerModel& model, int k, Twist twist);

// Riemann-Roch evaluation (k/2pi) Int (omega + k^{-1} omega_1), by quadrature.
double riemann_roch_dimension(const KahlerModel& model,
                              const QuadratureGrid& quad, int k, Twist twist);

struct GramMatrix {
  Eigen::MatrixXcd G;
  double cond_estimate;
};

// Gram matrix of the monomial basis by quadrature. Throws if the result is
// not positive definite (under-resolved quadrature).
GramMatrix gram(const SectionBasis& basis, const QuadratureGrid& quad);

// Monomial -> orthonormal transform from the Cholesky factor: T^H G T = Id.
struct OrthonormalMap {
  Eigen::MatrixXcd T;
};

// Refuses work when the Gram condition estimate exceeds cond_limit.
OrthonormalMap orthonormalize(const GramMatrix& gram,
                              double cond_limit = 1e12);

// Stable radial profile table P_q(v) = exp(q ln sqrt(t_v) - (N+2) ln(1+t_v)),
// q = 0..2N; shared by the Gram and Toeplitz assembly loops.
std::vector<std::vector<double>> radial_profiles(const SectionBasis& basis,
                                                 const QuadratureGrid& quad);

// Matrix of a multiplier in the monomial basis:
// M_{m'm} = Int f(t,theta) z^m conj(z)^{m'} (1+t)^{-N} dmu,
// assembled through an angular transform per radial ring. f may be complex.
Eigen::MatrixXcd monomial_matrix(
    const SectionBasis& basis, const QuadratureGrid& quad,
    const std::function<cplx(double, double)>& multiplier);

}  // namespace btlab::quantum

#endif
