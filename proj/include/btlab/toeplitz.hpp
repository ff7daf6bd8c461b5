#ifndef BTLAB_TOEPLITZ_HPP
#define BTLAB_TOEPLITZ_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "btlab/observables.hpp"
#include "btlab/quantum.hpp"

namespace btlab::toeplitz {

using geom::cplx;
using geom::KahlerModel;
using geom::QuadratureGrid;
using geom::Twist;
using obs::Observable;
using quantum::SectionBasis;

// Dense matrix of a Toeplitz-type operator in the orthonormal basis of H_k.
struct Operator {
  Eigen::MatrixXcd A;
  int k;
  Twist twist;
  std::string multiplier_tag;
  double hermiticity_drift = 0.0;  // max |A - A^H| before symmetrization
  int dim() const { return static_cast<int>(A.rows()); }
};

// Shared per-level context so repeated assemblies reuse the Gram factor.
struct Context {
  KahlerModel model;
  QuadratureGrid quad;
  SectionBasis bas;
  quantum::GramMatrix gm;
  quantum::OrthonormalMap on;
};

Context make_context(const KahlerModel& model, int k, Twist twist,
                     int radial_order = 128, int angular_order = 512);

// T_k(f) = Pi_k f Pi_k for a multiplier sampled on the grid. Real multipliers
// must produce Hermitian matrices; a drift above herm_tol signals quadrature
// under-resolution and throws.
Operator assemble(const std::function<cplx(double, double)>& multiplier,
                  const Context& ctx, const std::string& tag,
                  bool expect_hermitian = true, double herm_tol = 1e-8);

Operator assemble_observable(const Observable& f, const Context& ctx);

// Holomorphic Laplacian as a multiplier transform (analytic path).
// Delta f = G^{z zbar} d_z d_zbar f; for the built-in observables this is
// carried by Observable::laplacian.
double holomorphic_laplacian(const KahlerModel& model, const Observable& f,
                             cplx z);

// Geometric quantization operator Q(f) = T_k(f - Delta f / (2k)):
// principal symbol f, vanishing subprincipal symbol.
Operator quantize_gq(const Observable& f, const Context& ctx);

enum class QuantKind { plain, geometric };
Operator quantize(QuantKind kind, const Observable& f, const Context& ctx);

// ascending eigenvalues; input must be Hermitian up to herm_tol
std::vector<double> spectrum(const Operator& op, double herm_tol = 1e-10);

double operator_norm(const Eigen::MatrixXcd& A);  // spectral norm

// ||T_f T_g - T_fg|| / ||T_fg||
double product_defect(const Observable& f, const Observable& g,
                      const Context& ctx);

// Relative defect of i k [Q_f, Q_g] against T(h):
//   with_correction = false: h = {f,g}
//   with_correction = true:  h = (1 - Delta/(2k)) {f,g} + k^{-1} <pi_1, df^dg>
// where <pi_1, df^dg> = -omega1_scalar * {f,g} on this model. The bracket
// {f,g} is supplied analytically.
double commutator_defect(const Observable& f, const Observable& g,
                         const Observable& bracket_fg, const Context& ctx,
                         bool with_correction);

struct TraceCheckRow {
  int k;
  double trace;       // Tr T_k(f)
  double predicted;   // (k/2pi) Int f (omega + k^{-1} omega_1)
  double residual;    // |trace - predicted|
};

std::vector<TraceCheckRow> trace_check(const Observable& f,
                                       const std::vector<int>& k_range,
                                       Twist twist, int radial_order = 128,
                                       int angular_order = 512);

// ||g(A) - T_k(target)|| / ||T_k(target)|| where target realizes the
// normalized symbol g(f0) + hbar g'(f0) f1 of g(A) as a multiplier:
// target = g(f0) + k^{-1} [ g'(f0) f1 - Delta(g(f0))/2 ].
// kind selects the input operator A (and thereby its subprincipal symbol
// f1 = Delta f / 2 for plain T, f1 = 0 for Q). with_f1_term toggles the
// hbar g' f1 contribution.
double functional_calculus_defect(const std::vector<double>& g_poly,
                                  QuantKind kind, const Observable& f,
                                  const Context& ctx, bool with_f1_term);

// g(A) by eigendecomposition (g smooth on the spectrum; here polynomial
// or callable). Throws if A is not Hermitian.
Eigen::MatrixXcd apply_function(const Operator& op,
                                const std::function<double(double)>& g);

}  // namespace btlab::toeplitz

#endif
