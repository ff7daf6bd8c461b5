#include "btlab/quantum.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "btlab/kernels.hpp"

namespace btlab::quantum {

namespace {
constexpr double pi = std::numbers::pi;
}

SectionBasis basis(const KahlerModel& model, int k, Twist twist) {
  (void)model;
  if (k < 1) throw std::invalid_argument("basis: k must be >= 1");
  int N = k + geom::twist_degree(twist);
  if (N < 0) throw std::invalid_argument("basis: negative total degree");
  return SectionBasis{k, twist, N};
}

double riemann_roch_dimension(const KahlerModel& model,
                              const QuadratureGrid& quad, int k, Twist twist) {
  double area = quad.integrate([](double, double) { return 1.0; });
  double s1 = geom::omega1_scalar(twist);
  return (k / (2.0 * pi)) * (area + s1 * area / k);
}

std::vector<std::vector<double>> radial_profiles(const SectionBasis& basis,
                                                 const QuadratureGrid& quad) {
  const int R = quad.radial_order;
  const int N = basis.N;
  std::vector<std::vector<double>> P(2 * N + 1, std::vector<double>(R));
  for (int v = 0; v < R; ++v) {
    double ls = std::log(quad.sqrt_t[v]);
    double l1 = std::log1p(quad.t[v]);
    for (int q = 0; q <= 2 * N; ++q)
      P[q][v] = std::exp(q * ls - (N + 2.0) * l1);
  }
  return P;
}

Eigen::MatrixXcd monomial_matrix(
    const SectionBasis& basis, const QuadratureGrid& quad,
    const std::function<cplx(double, double)>& multiplier) {
  const int n = basis.dim();
  const int N = basis.N;
  const int R = quad.radial_order;
  const int M = quad.angular_order;
  if (M <= 2 * N)
    throw std::invalid_argument("monomial_matrix: angular order must exceed 2N");

  // angular transform per radial ring: Fhat_q(v) = (1/M) sum_j f e^{-i q theta_j}
  std::vector<double> ctab(M), stab(M);
  for (int m = 0; m < M; ++m) {
    ctab[m] = std::cos(2.0 * pi * m / M);
    stab[m] = std::sin(2.0 * pi * m / M);
  }
  std::vector<double> fre(M), fim(M), cq(M), sq(M);
  // Fhat[q + N][v]
  std::vector<std::vector<double>> Fre(2 * N + 1, std::vector<double>(R));
  std::vector<std::vector<double>> Fim(2 * N + 1, std::vector<double>(R));
  for (int v = 0; v < R; ++v) {
    for (int j = 0; j < M; ++j) {
      cplx val = multiplier(quad.t[v], quad.theta[j]);
      fre[j] = val.real();
      fim[j] = val.imag();
    }
    for (int q = -N; q <= N; ++q) {
      long qq = ((long)q % M + M) % M;
      for (int j = 0; j < M; ++j) {
        int idx = (int)((qq * j) % M);
        cq[j] = ctab[idx];
        sq[j] = stab[idx];
      }
      // e^{-i q theta} = cos - i sin
      double re = kern::dot(fre.data(), cq.data(), M) +
                  kern::dot(fim.data(), sq.data(), M);
      double im = kern::dot(fim.data(), cq.data(), M) -
                  kern::dot(fre.data(), sq.data(), M);
      Fre[q + N][v] = re / M;
      Fim[q + N][v] = im / M;
    }
  }

  auto P = radial_profiles(basis, quad);
  Eigen::MatrixXcd A(n, n);
  for (int m = 0; m < n; ++m) {
    for (int mp = 0; mp < n; ++mp) {
      int q = mp - m;  // angular selection e^{i(m - mp) theta} -> Fhat_{mp-m}
      const auto& Pq = P[m + mp];
      double re = kern::dot3(quad.rho.data(), Pq.data(), Fre[q + N].data(), R);
      double im = kern::dot3(quad.rho.data(), Pq.data(), Fim[q + N].data(), R);
      A(mp, m) = 2.0 * pi * cplx(re, im);
    }
  }
  return A;
}

GramMatrix gram(const SectionBasis& basis, const QuadratureGrid& quad) {
  GramMatrix out;
  out.G = monomial_matrix(basis, quad,
                          [](double, double) { return cplx(1.0, 0.0); });
  const int n = basis.dim();
  double gmin = 1e300, gmax = 0.0;
  for (int m = 0; m < n; ++m) {
    double d = out.G(m, m).real();
    if (!(d > 0.0))
      throw std::runtime_error("gram: lost positive definiteness");
    gmin = std::min(gmin, d);
    gmax = std::max(gmax, d);
  }
  out.cond_estimate = gmax / gmin;
  return out;
}

OrthonormalMap orthonormalize(const GramMatrix& gram, double cond_limit) {
  if (gram.cond_estimate > cond_limit)
    throw std::runtime_error(
        "orthonormalize: Gram condition estimate exceeds limit (resolution "
        "misconfiguration)");
  Eigen::LLT<Eigen::MatrixXcd> llt(gram.G);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("orthonormalize: Cholesky failed");
  const int n = gram.G.rows();
  Eigen::MatrixXcd L = llt.matrixL();
  // T = L^{-H}: T^H G T = L^{-1} (L L^H) L^{-H} = Id
  Eigen::MatrixXcd T =
      L.adjoint().triangularView<Eigen::Upper>().solve(
          Eigen::MatrixXcd::Identity(n, n));
  return OrthonormalMap{std::move(T)};
}

}  // namespace btlab::quantum
