#ifndef BTLAB_GEOMETRY_HPP
#define BTLAB_GEOMETRY_HPP

#include <complex>
#include <functional>
#include <vector>

namespace btlab::geom {

using cplx = std::complex<double>;

// The model surface in the north chart z, with Kaehler potential
// Phi = log(1+|z|^2). The fundamental form is omega = i * form_density *
// dz ^ dzbar (total area 2*pi); the Liouville measure equals omega.
struct KahlerModel {
  double potential(double t) const;     // Phi as a function of t = |z|^2
  double form_density(double t) const;  // (1+t)^{-2}
  double total_area() const { return 2.0 * 3.14159265358979323846; }
  // metric inverse G^{z zbar} = (1+t)^2, used by the holomorphic Laplacian
  double metric_inv(double t) const;
};

KahlerModel fubini_study_model();

enum class BundleKind { prequantum, canonical, halfform, trivial };

// Line bundle data in the holomorphic frame: sections are functions f with
// pointwise squared norm |f|^2 exp(-psi). psi = weight_coeff * Phi, so the
// curvature is weight_coeff times that of the prequantum bundle.
struct LineBundleData {
  BundleKind kind;
  int degree;
  double weight_coeff;  // psi = weight_coeff * Phi
  double metric_log_weight(double t) const;
  // (1/i) * curvature as a multiple of omega; constant on this model.
  double curvature_scalar() const { return weight_coeff; }
  // psi_z at z (connection form of the Chern connection is -psi_z dz)
  cplx d_weight(cplx z) const;
};

LineBundleData bundle(BundleKind kind);

// Twist K of the quantum spaces H_k = holomorphic sections of L^k (x) K.
enum class Twist { delta, trivial };

// auxiliary bundle L1 with K = L1 (x) delta
LineBundleData l1_bundle(Twist twist);
// scalar s with omega_1 = s * omega (0 for K = delta, 1 for K trivial)
double omega1_scalar(Twist twist);
// degree of K itself (-1 for delta, 0 for trivial)
int twist_degree(Twist twist);
double twist_weight_coeff(Twist twist);

// Tensor-product quadrature: Gauss-Legendre in u with t = (u/(1-u))^2 and a
// uniform trapezoid rule in the angle. Weights carry the Liouville measure,
// so sum_i w_i f(t_i, theta_i) approximates Int f dmu. Exact (to roundoff)
// for integrands t^{m/2} (1+t)^{-p} e^{i q theta} with p >= 2, m <= 2p-3.
struct QuadratureGrid {
  int radial_order;
  int angular_order;
  std::vector<double> t;         // radial nodes, size radial_order
  std::vector<double> sqrt_t;    // sqrt(t)
  std::vector<double> rho;       // radial weight glw * dt/du (no measure factor)
  std::vector<double> w_mu;      // rho * (1+t)^{-2} * 2*pi/M  (Liouville weight per ring)
  std::vector<double> theta;     // angular nodes, size angular_order
  double angular_step() const;

  // Int f(t, theta) dmu over the whole model
  double integrate(const std::function<double(double, double)>& f) const;
  cplx integrate_c(const std::function<cplx(double, double)>& f) const;
};

QuadratureGrid build_quadrature(const KahlerModel& model, int radial_order,
                                int angular_order);

// Gauss-Legendre nodes/weights on [a, b]
void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                    std::vector<double>& w);

// A closed loop sampled at uniform angles, stored counterclockwise:
// gamma(theta_j) = r(theta_j) e^{i theta_j}. Latitude-type loops only
// (graphs over the angle), which covers every level set handled here.
struct LoopPath {
  std::vector<double> theta;  // uniform grid on [0, 2pi)
  std::vector<double> r;      // radius samples
  std::vector<double> dr;     // dr/dtheta samples
  int orientation = +1;       // ccw in the chart

  std::size_t size() const { return theta.size(); }
  cplx point(std::size_t j) const;
  cplx tangent(std::size_t j) const;  // dz/dtheta
  double closure_gap() const { return 0.0; }  // uniform-angle graphs close exactly
};

LoopPath make_latitude_loop(double t_level, int samples);

// Holonomy of the bundle connection along the loop: unit complex number
// exp(i * phase). holonomy_phase returns the continuous phase (the
// connection-form integral), not reduced mod 2pi; for contractible ccw loops
// it equals hol_sign * curvature_scalar * enclosed_left_area.
double holonomy_phase(const LineBundleData& bundle, const LoopPath& loop);
cplx holonomy(const LineBundleData& bundle, const LoopPath& loop);

// Same phase via the transport ODE (RK4 on the unitary-gauge connection
// form); used as an independent cross-check of the trapezoid integral.
double holonomy_phase_ode(const LineBundleData& bundle, const LoopPath& loop);

// omega-area of the region between two level loops (per-angle closed-form
// radial integral, spectrally accurate in the angle).
double area_between(const KahlerModel& model, const LoopPath& inner,
                    const LoopPath& outer);
// omega-area of the disk left of a ccw loop (contains the north pole)
double enclosed_area(const KahlerModel& model, const LoopPath& loop);

// Geodesic curvature integral along the loop in the Kaehler metric,
// ccw orientation, region on the left. Satisfies Gauss-Bonnet:
// Int k_g ds = 2pi - Int_enclosed K dA with K = 2 here.
double geodesic_curvature_integral(const KahlerModel& model,
                                   const LoopPath& loop);

}  // namespace btlab::geom

#endif
