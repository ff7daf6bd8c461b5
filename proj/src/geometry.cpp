#include "btlab/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "btlab/conventions.hpp"
#include "btlab/kernels.hpp"

namespace btlab::geom {

namespace {
constexpr double pi = std::numbers::pi;
}

double KahlerModel::potential(double t) const { return std::log1p(t); }
double KahlerModel::form_density(double t) const {
  double u = 1.0 + t;
  return 1.0 / (u * u);
}
double KahlerModel::metric_inv(double t) const {
  double u = 1.0 + t;
  return u * u;
}

KahlerModel fubini_study_model() { return KahlerModel{}; }

double LineBundleData::metric_log_weight(double t) const {
  return weight_coeff * std::log1p(t);
}

cplx LineBundleData::d_weight(cplx z) const {
  double t = std::norm(z);
  return weight_coeff * std::conj(z) / (1.0 + t);
}

LineBundleData bundle(BundleKind kind) {
  switch (kind) {
    case BundleKind::prequantum:
      return {kind, 1, 1.0};
    case BundleKind::canonical:
      return {kind, -2, -2.0};
    case BundleKind::halfform:
      return {kind, -1, -1.0};
    case BundleKind::trivial:
      return {kind, 0, 0.0};
  }
  throw std::invalid_argument("unknown bundle kind");
}

LineBundleData l1_bundle(Twist twist) {
  // K = L1 (x) delta, so L1 = K (x) delta^{-1}
  if (twist == Twist::delta) return bundle(BundleKind::trivial);
  LineBundleData b{BundleKind::trivial, 1, 1.0};
  return b;
}

double omega1_scalar(Twist twist) {
  // omega_1 = omega_K - omega_c / 2; omega_c = -2 omega on this model
  return twist == Twist::delta ? 0.0 : 1.0;
}

int twist_degree(Twist twist) { return twist == Twist::delta ? -1 : 0; }
double twist_weight_coeff(Twist twist) {
  return twist == Twist::delta ? -1.0 : 0.0;
}

void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                    std::vector<double>& w) {
  if (n < 2) throw std::invalid_argument("gauss_legendre: order must be >= 2");
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi initial guess, then Newton on P_n
    double xi = std::cos(pi * (i + 0.75) / (n + 0.5));
    double p1 = 0, p2 = 0;
    for (int it = 0; it < 100; ++it) {
      p1 = 1.0;
      p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * xi * p2 - j * p3) / (j + 1.0);
      }
      double dp = n * (xi * p1 - p2) / (xi * xi - 1.0);
      double dx = p1 / dp;
      xi -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    p1 = 1.0;
    p2 = 0.0;
    for (int j = 0; j < n; ++j) {
      double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j + 1.0) * xi * p2 - j * p3) / (j + 1.0);
    }
    double dp = n * (xi * p1 - p2) / (xi * xi - 1.0);
    double wi = 2.0 / ((1.0 - xi * xi) * dp * dp);
    x[i] = 0.5 * (a + b) - 0.5 * (b - a) * xi;
    x[n - 1 - i] = 0.5 * (a + b) + 0.5 * (b - a) * xi;
    w[i] = 0.5 * (b - a) * wi;
    w[n - 1 - i] = w[i];
  }
}

double QuadratureGrid::angular_step() const {
  return 2.0 * pi / angular_order;
}

double QuadratureGrid::integrate(
    const std::function<double(double, double)>& f) const {
  const int R = radial_order, M = angular_order;
  std::vector<double> ring(M), ring_sum(R);
  for (int v = 0; v < R; ++v) {
    for (int j = 0; j < M; ++j) ring[j] = f(t[v], theta[j]);
    ring_sum[v] = kern::sum(ring.data(), M);
  }
  return kern::dot(w_mu.data(), ring_sum.data(), R);
}

cplx QuadratureGrid::integrate_c(
    const std::function<cplx(double, double)>& f) const {
  const int R = radial_order, M = angular_order;
  std::vector<double> re(M), im(M), sre(R), sim(R);
  for (int v = 0; v < R; ++v) {
    for (int j = 0; j < M; ++j) {
      cplx val = f(t[v], theta[j]);
      re[j] = val.real();
      im[j] = val.imag();
    }
    sre[v] = kern::sum(re.data(), M);
    sim[v] = kern::sum(im.data(), M);
  }
  return {kern::dot(w_mu.data(), sre.data(), R),
          kern::dot(w_mu.data(), sim.data(), R)};
}

QuadratureGrid build_quadrature(const KahlerModel& model, int radial_order,
                                int angular_order) {
  (void)model;
  if (radial_order < 2 || angular_order < 2)
    throw std::invalid_argument("build_quadrature: degenerate orders");
  QuadratureGrid g;
  g.radial_order = radial_order;
  g.angular_order = angular_order;
  std::vector<double> u, w;
  gauss_legendre(radial_order, 0.0, 1.0, u, w);
  g.t.resize(radial_order);
  g.sqrt_t.resize(radial_order);
  g.rho.resize(radial_order);
  g.w_mu.resize(radial_order);
  for (int v = 0; v < radial_order; ++v) {
    double s = u[v] / (1.0 - u[v]);  // s = sqrt(t)
    double t = s * s;
    g.t[v] = t;
    g.sqrt_t[v] = s;
    double dt_du = 2.0 * u[v] / std::pow(1.0 - u[v], 3);
    g.rho[v] = w[v] * dt_du;
    g.w_mu[v] = g.rho[v] * model.form_density(t) * (2.0 * pi / angular_order);
  }
  g.theta.resize(angular_order);
  for (int j = 0; j < angular_order; ++j)
    g.theta[j] = 2.0 * pi * j / angular_order;
  return g;
}

cplx LoopPath::point(std::size_t j) const {
  return std::polar(r[j], theta[j]);
}

cplx LoopPath::tangent(std::size_t j) const {
  // d/dtheta [ r e^{i theta} ] = (dr + i r) e^{i theta}
  cplx e = std::polar(1.0, theta[j]);
  return (dr[j] + cplx(0.0, 1.0) * r[j]) * e;
}

LoopPath make_latitude_loop(double t_level, int samples) {
  if (t_level <= 0.0) throw std::invalid_argument("latitude needs t > 0");
  LoopPath lp;
  lp.theta.resize(samples);
  lp.r.assign(samples, std::sqrt(t_level));
  lp.dr.assign(samples, 0.0);
  for (int j = 0; j < samples; ++j) lp.theta[j] = 2.0 * pi * j / samples;
  return lp;
}

double holonomy_phase(const LineBundleData& bundle, const LoopPath& loop) {
  // unitary-gauge connection form integral: phase = Int Im(psi_z dz(gamma'))
  const std::size_t M = loop.size();
  if (M < 8) throw std::invalid_argument("holonomy: loop under-sampled");
  std::vector<double> f(M), w(M, 2.0 * pi / double(M));
  for (std::size_t j = 0; j < M; ++j) {
    cplx z = loop.point(j);
    f[j] = std::imag(bundle.d_weight(z) * loop.tangent(j));
  }
  return conv::hol_sign * kern::dot(w.data(), f.data(), M);
}

cplx holonomy(const LineBundleData& bundle, const LoopPath& loop) {
  return std::polar(1.0, holonomy_phase(bundle, loop));
}

double holonomy_phase_ode(const LineBundleData& bundle, const LoopPath& loop) {
  // RK4 transport of the unit section; trigonometric interpolation is
  // overkill here, linear interpolation of the (smooth) integrand suffices
  // at the sample densities used.
  const std::size_t M = loop.size();
  auto rhs = [&](double th) {
    // interpolate loop point at angle th (piecewise linear in r, dr)
    double h = 2.0 * pi / double(M);
    double s = th / h;
    std::size_t j0 = static_cast<std::size_t>(s) % M;
    std::size_t j1 = (j0 + 1) % M;
    double a = s - std::floor(s);
    double r = (1 - a) * loop.r[j0] + a * loop.r[j1];
    double dr = (1 - a) * loop.dr[j0] + a * loop.dr[j1];
    cplx e = std::polar(1.0, th);
    cplx z = r * e;
    cplx tz = (dr + cplx(0, 1) * r) * e;
    return std::imag(bundle.d_weight(z) * tz);
  };
  double phase = 0.0;
  const int steps = static_cast<int>(M);
  double h = 2.0 * pi / steps;
  for (int i = 0; i < steps; ++i) {
    double th = i * h;
    double k1 = rhs(th);
    double k2 = rhs(th + 0.5 * h);
    double k3 = rhs(th + 0.5 * h);
    double k4 = rhs(th + h);
    phase += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return conv::hol_sign * phase;
}

double enclosed_area(const KahlerModel& model, const LoopPath& loop) {
  (void)model;
  // dmu = (1+t)^{-2} dt dtheta integrates in closed form along each ray
  const std::size_t M = loop.size();
  std::vector<double> f(M), w(M, 2.0 * pi / double(M));
  for (std::size_t j = 0; j < M; ++j) {
    double R = loop.r[j] * loop.r[j];
    f[j] = R / (1.0 + R);
  }
  return kern::dot(w.data(), f.data(), M);
}

double area_between(const KahlerModel& model, const LoopPath& inner,
                    const LoopPath& outer) {
  (void)model;
  if (inner.size() != outer.size())
    throw std::invalid_argument("area_between: sample counts differ");
  const std::size_t M = inner.size();
  std::vector<double> f(M), w(M, 2.0 * pi / double(M));
  for (std::size_t j = 0; j < M; ++j) {
    double Ri = inner.r[j] * inner.r[j];
    double Ro = outer.r[j] * outer.r[j];
    f[j] = 1.0 / (1.0 + Ri) - 1.0 / (1.0 + Ro);
  }
  return kern::dot(w.data(), f.data(), M);
}

double geodesic_curvature_integral(const KahlerModel& model,
                                   const LoopPath& loop) {
  (void)model;
  // conformal factor phi_c with g = e^{2 phi_c} |dz|^2: phi_c = ln(sqrt(2)/(1+t));
  // k_g ds = (kappa_e - d_{n_in} phi_c) ds_e, n_in the inward euclidean normal
  const std::size_t M = loop.size();
  std::vector<double> f(M), w(M, 2.0 * pi / double(M));
  // second derivative of r by spectral difference of dr samples (central,
  // fine at these densities since dr is smooth)
  for (std::size_t j = 0; j < M; ++j) {
    std::size_t jp = (j + 1) % M, jm = (j + M - 1) % M;
    double h = 2.0 * pi / double(M);
    double r = loop.r[j], dr = loop.dr[j];
    double ddr = (loop.dr[jp] - loop.dr[jm]) / (2.0 * h);
    double g2 = r * r + dr * dr;
    double kappa_e = (r * r + 2.0 * dr * dr - r * ddr) / std::pow(g2, 1.5);
    cplx z = loop.point(j);
    double t = std::norm(z);
    cplx grad = -2.0 * z / (1.0 + t);  // euclidean gradient of phi_c
    cplx tz = loop.tangent(j);
    cplx n_in = cplx(0, 1) * tz / std::abs(tz);
    double dn = std::real(std::conj(grad) * n_in);
    f[j] = (kappa_e - dn) * std::sqrt(g2);
  }
  return kern::dot(w.data(), f.data(), M);
}

}  // namespace btlab::geom
