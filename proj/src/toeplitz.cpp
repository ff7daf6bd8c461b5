#include "btlab/toeplitz.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace btlab::toeplitz {

namespace {
constexpr double pi = std::numbers::pi;

std::function<cplx(double, double)> sampled(const Observable& f) {
  return [f](double t, double theta) {
    return cplx(f.value(std::polar(std::sqrt(t), theta)), 0.0);
  };
}
}  // namespace

Context make_context(const KahlerModel& model, int k, Twist twist,
                     int radial_order, int angular_order) {
  Context ctx{model,
              geom::build_quadrature(model, radial_order, angular_order),
              quantum::basis(model, k, twist),
              {},
              {}};
  ctx.gm = quantum::gram(ctx.bas, ctx.quad);
  ctx.on = quantum::orthonormalize(ctx.gm);
  return ctx;
}

Operator assemble(const std::function<cplx(double, double)>& multiplier,
                  const Context& ctx, const std::string& tag,
                  bool expect_hermitian, double herm_tol) {
  Eigen::MatrixXcd M = quantum::monomial_matrix(ctx.bas, ctx.quad, multiplier);
  Eigen::MatrixXcd A = ctx.on.T.adjoint() * M * ctx.on.T;
  Operator op{std::move(A), ctx.bas.k, ctx.bas.twist, tag};
  if (expect_hermitian) {
    op.hermiticity_drift = (op.A - op.A.adjoint()).cwiseAbs().maxCoeff();
    if (op.hermiticity_drift > herm_tol)
      throw std::runtime_error("assemble: Hermiticity drift " +
                               std::to_string(op.hermiticity_drift) +
                               " signals quadrature under-resolution");
    op.A = 0.5 * (op.A + op.A.adjoint().eval());
  }
  return op;
}

Operator assemble_observable(const Observable& f, const Context& ctx) {
  return assemble(sampled(f), ctx, "T(" + f.name() + ")");
}

double holomorphic_laplacian(const KahlerModel& model, const Observable& f,
                             cplx z) {
  (void)model;
  return f.laplacian(z);
}

Operator quantize_gq(const Observable& f, const Context& ctx) {
  const double k = ctx.bas.k;
  auto mult = [f, k](double t, double theta) {
    cplx z = std::polar(std::sqrt(t), theta);
    return cplx(f.value(z) - f.laplacian(z) / (2.0 * k), 0.0);
  };
  return assemble(mult, ctx, "Q(" + f.name() + ")");
}

Operator quantize(QuantKind kind, const Observable& f, const Context& ctx) {
  return kind == QuantKind::plain ? assemble_observable(f, ctx)
                                  : quantize_gq(f, ctx);
}

std::vector<double> spectrum(const Operator& op, double herm_tol) {
  double drift = (op.A - op.A.adjoint()).cwiseAbs().maxCoeff();
  if (drift > herm_tol)
    throw std::invalid_argument("spectrum: non-Hermitian input");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.A,
                                                     Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(),
                         es.eigenvalues().data() + op.dim());
  return ev;
}

double operator_norm(const Eigen::MatrixXcd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  return svd.singularValues()(0);
}

double product_defect(const Observable& f, const Observable& g,
                      const Context& ctx) {
  Operator Tf = assemble_observable(f, ctx);
  Operator Tg = assemble_observable(g, ctx);
  Operator Tfg = assemble_observable(obs::mul(f, g), ctx);
  double target = operator_norm(Tfg.A);
  return operator_norm(Tf.A * Tg.A - Tfg.A) / target;
}

double commutator_defect(const Observable& f, const Observable& g,
                         const Observable& bracket_fg, const Context& ctx,
                         bool with_correction) {
  const double k = ctx.bas.k;
  Operator Qf = quantize_gq(f, ctx);
  Operator Qg = quantize_gq(g, ctx);
  Eigen::MatrixXcd lhs =
      cplx(0.0, 1.0) * k * (Qf.A * Qg.A - Qg.A * Qf.A);
  std::function<cplx(double, double)> mult;
  if (!with_correction) {
    mult = sampled(bracket_fg);
  } else {
    double s1 = geom::omega1_scalar(ctx.bas.twist);
    mult = [bracket_fg, k, s1](double t, double theta) {
      cplx z = std::polar(std::sqrt(t), theta);
      double h = bracket_fg.value(z) - bracket_fg.laplacian(z) / (2.0 * k) -
                 s1 * bracket_fg.value(z) / k;
      return cplx(h, 0.0);
    };
  }
  Operator Th = assemble(mult, ctx, "T(bracket)");
  return operator_norm(lhs - Th.A) / operator_norm(Th.A);
}

std::vector<TraceCheckRow> trace_check(const Observable& f,
                                       const std::vector<int>& k_range,
                                       Twist twist, int radial_order,
                                       int angular_order) {
  std::vector<TraceCheckRow> rows;
  KahlerModel model = geom::fubini_study_model();
  auto quad = geom::build_quadrature(model, radial_order, angular_order);
  double int_f = quad.integrate([&f](double t, double theta) {
    return f.value(std::polar(std::sqrt(t), theta));
  });
  double s1 = geom::omega1_scalar(twist);
  for (int k : k_range) {
    Context ctx = make_context(model, k, twist, radial_order, angular_order);
    Operator Tf = assemble_observable(f, ctx);
    double tr = Tf.A.trace().real();
    double pred = (k / (2.0 * pi)) * (int_f + s1 * int_f / k);
    rows.push_back({k, tr, pred, std::abs(tr - pred)});
  }
  return rows;
}

Eigen::MatrixXcd apply_function(const Operator& op,
                                const std::function<double(double)>& g) {
  double drift = (op.A - op.A.adjoint()).cwiseAbs().maxCoeff();
  if (drift > 1e-10)
    throw std::invalid_argument("apply_function: non-Hermitian input");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.A);
  Eigen::VectorXd gl = es.eigenvalues();
  for (int i = 0; i < gl.size(); ++i) gl(i) = g(gl(i));
  return es.eigenvectors() * gl.asDiagonal() *
         es.eigenvectors().adjoint();
}

double functional_calculus_defect(const std::vector<double>& g_poly,
                                  QuantKind kind, const Observable& f,
                                  const Context& ctx, bool with_f1_term) {
  const double k = ctx.bas.k;
  Operator A = quantize(kind, f, ctx);
  auto geval = [&g_poly](double x) {
    double v = 0.0;
    for (std::size_t i = g_poly.size(); i-- > 0;) v = v * x + g_poly[i];
    return v;
  };
  Eigen::MatrixXcd gA = apply_function(A, geval);

  Observable gf0 = obs::compose_poly(g_poly, f);
  std::vector<double> g1c(g_poly.size() > 1 ? g_poly.size() - 1 : 1, 0.0);
  for (std::size_t i = 1; i < g_poly.size(); ++i)
    g1c[i - 1] = g_poly[i] * double(i);
  Observable g1f0 = obs::compose_poly(g1c, f);

  auto mult = [=](double t, double theta) {
    cplx z = std::polar(std::sqrt(t), theta);
    double f1 = (kind == QuantKind::plain) ? 0.5 * f.laplacian(z) : 0.0;
    double val = gf0.value(z) - gf0.laplacian(z) / (2.0 * k);
    if (with_f1_term) val += g1f0.value(z) * f1 / k;
    return cplx(val, 0.0);
  };
  Operator target = assemble(mult, ctx, "T(funcalc target)");
  return operator_norm(gA - target.A) / operator_norm(target.A);
}

}  // namespace btlab::toeplitz
