#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "btlab/geometry.hpp"
#include "btlab/observables.hpp"
#include "oracles.hpp"

using namespace btlab;
using geom::cplx;
constexpr double pi = std::numbers::pi;

TEST_CASE("fubini-study model basics") {
  auto m = geom::fubini_study_model();
  CHECK(m.form_density(0.0) == doctest::Approx(1.0));
  CHECK(m.form_density(1.0) == doctest::Approx(0.25));
  CHECK(m.potential(0.0) == doctest::Approx(0.0));
}

TEST_CASE("chart transition z -> 1/z is an isometry of the form") {
  // density transforms with |d(1/z)/dz|^2 = 1/t^2
  for (double t : {0.3, 1.0, 2.7, 10.0}) {
    double north = 1.0 / ((1.0 + t) * (1.0 + t));
    double south = 1.0 / ((1.0 + 1.0 / t) * (1.0 + 1.0 / t)) * (1.0 / (t * t));
    CHECK(north == doctest::Approx(south).epsilon(1e-14));
  }
}

TEST_CASE("quadrature: area, odd symmetry, beta moments") {
  auto m = geom::fubini_study_model();
  auto q = geom::build_quadrature(m, 64, 64);
  double area = q.integrate([](double, double) { return 1.0; });
  CHECK(std::abs(area - 2 * pi) < 1e-12);

  auto x3 = obs::coord_x3();
  double ix3 = q.integrate([&](double t, double th) {
    return x3.value(std::polar(std::sqrt(t), th));
  });
  CHECK(std::abs(ix3) < 1e-12);

  // radial Beta moment through the ring weights: Int t (1+t)^{-3} dt = B(2,1)
  double v = 0;
  for (int i = 0; i < q.radial_order; ++i)
    v += q.rho[i] * q.t[i] / std::pow(1.0 + q.t[i], 3);
  CHECK(v == doctest::Approx(0.5).epsilon(1e-12));

  // half-integer powers are exact too: Int t^{3/2} (1+t)^{-4} dt = B(5/2,3/2)
  double v2 = 0;
  for (int i = 0; i < q.radial_order; ++i)
    v2 += q.rho[i] * std::pow(q.t[i], 1.5) / std::pow(1.0 + q.t[i], 4);
  double expect = std::exp(std::lgamma(2.5) + std::lgamma(1.5) - std::lgamma(4.0));
  CHECK(v2 == doctest::Approx(expect).epsilon(1e-12));

  CHECK_THROWS(geom::build_quadrature(m, 1, 64));
}

TEST_CASE("bundle curvature scalars and degrees") {
  auto L = geom::bundle(geom::BundleKind::prequantum);
  auto C = geom::bundle(geom::BundleKind::canonical);
  auto D = geom::bundle(geom::BundleKind::halfform);
  auto T = geom::bundle(geom::BundleKind::trivial);
  CHECK(L.degree == 1);
  CHECK(C.degree == -2);
  CHECK(D.degree == -1);
  CHECK(L.curvature_scalar() == doctest::Approx(1.0));
  CHECK(C.curvature_scalar() == doctest::Approx(-2.0));
  CHECK(D.curvature_scalar() == doctest::Approx(-1.0));
  CHECK(T.curvature_scalar() == doctest::Approx(0.0));
  // degree additivity under tensor product tracks the weight coefficients
  CHECK(D.weight_coeff + D.weight_coeff == doctest::Approx(C.weight_coeff));

  // finite-difference curvature check: (lap_flat psi / 4) / density = scalar
  auto m = geom::fubini_study_model();
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (const auto& b : {L, C, D}) {
    for (int i = 0; i < 100; ++i) {
      cplx z(u(rng), u(rng));
      auto psi = [&](cplx w) { return b.metric_log_weight(std::norm(w)); };
      double h = 1e-4;
      double lap = (psi(z + h) + psi(z - h) + psi(z + cplx(0, h)) +
                    psi(z - cplx(0, h)) - 4 * psi(z)) /
                   (h * h) / 4.0;
      CHECK(std::abs(lap / m.form_density(std::norm(z)) -
                     b.curvature_scalar()) < 1e-6);
    }
  }
}

TEST_CASE("omega_1 for the two twists") {
  CHECK(geom::omega1_scalar(geom::Twist::delta) == doctest::Approx(0.0));
  CHECK(geom::omega1_scalar(geom::Twist::trivial) == doctest::Approx(1.0));
  CHECK(geom::l1_bundle(geom::Twist::trivial).curvature_scalar() ==
        doctest::Approx(1.0));
}

TEST_CASE("holonomy of latitudes") {
  auto m = geom::fubini_study_model();
  auto L = geom::bundle(geom::BundleKind::prequantum);
  auto T = geom::bundle(geom::BundleKind::trivial);

  // equator, ccw: phase = enclosed left area = pi, holonomy = -1
  auto eq = geom::make_latitude_loop(1.0, 512);
  CHECK(geom::holonomy_phase(L, eq) == doctest::Approx(pi).epsilon(1e-12));
  CHECK(std::abs(geom::holonomy(L, eq) - cplx(-1.0, 0.0)) < 1e-10);

  // trivial bundle: flat
  CHECK(std::abs(geom::holonomy(T, eq) - cplx(1.0, 0.0)) < 1e-14);

  // degenerate (tiny) loop: holonomy -> 1
  auto tiny = geom::make_latitude_loop(1e-12, 64);
  CHECK(std::abs(geom::holonomy(L, tiny) - cplx(1.0, 0.0)) < 1e-10);

  // phase equals enclosed area for all latitudes; transport ODE agrees
  for (double lam = -0.9; lam <= 0.9; lam += 0.3) {
    double t = (1.0 - lam) / (1.0 + lam);
    auto loop = geom::make_latitude_loop(t, 512);
    double ph = geom::holonomy_phase(L, loop);
    CHECK(ph == doctest::Approx(pi * (1.0 - lam)).epsilon(1e-10));
    CHECK(ph == doctest::Approx(geom::enclosed_area(m, loop)).epsilon(1e-10));
    CHECK(std::abs(ph - geom::holonomy_phase_ode(L, loop)) < 1e-8);
  }
}

TEST_CASE("level sets of the height function") {
  auto m = geom::fubini_study_model();
  auto x3 = obs::coord_x3();

  auto loops0 = obs::level_set_loops(m, x3, 0.0);
  REQUIRE(loops0.size() == 1);
  for (std::size_t j = 0; j < loops0[0].size(); j += 37)
    CHECK(loops0[0].r[j] == doctest::Approx(1.0).epsilon(1e-12));

  auto loops5 = obs::level_set_loops(m, x3, 0.5);
  for (std::size_t j = 0; j < loops5[0].size(); j += 37)
    CHECK(loops5[0].r[j] * loops5[0].r[j] ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  CHECK_THROWS_AS(obs::level_set_loops(m, x3, 1.5), std::domain_error);

  // f0 on every returned sample deviates from lambda by < 1e-8
  auto f = obs::by_name("x3p:0.1");
  auto loops = obs::level_set_loops(m, f, 0.2);
  for (std::size_t j = 0; j < loops[0].size(); ++j)
    CHECK(std::abs(f.value(loops[0].point(j)) - 0.2) < 1e-8);
}

TEST_CASE("areas and variation geometry") {
  auto m = geom::fubini_study_model();
  for (double lam : {-0.5, 0.0, 0.5}) {
    double t = (1.0 - lam) / (1.0 + lam);
    auto loop = geom::make_latitude_loop(t, 256);
    CHECK(geom::enclosed_area(m, loop) ==
          doctest::Approx(pi * (1 - lam)).epsilon(1e-12));
  }
  auto inner = geom::make_latitude_loop((1 - 0.5) / (1 + 0.5), 256);
  auto outer = geom::make_latitude_loop(1.0, 256);
  CHECK(geom::area_between(m, inner, outer) ==
        doctest::Approx(pi / 2).epsilon(1e-12));
}

TEST_CASE("geodesic curvature and Gauss-Bonnet") {
  auto m = geom::fubini_study_model();
  for (double lam : {-0.5, 0.0, 0.3, 0.5, 0.9}) {
    double t = (1.0 - lam) / (1.0 + lam);
    auto loop = geom::make_latitude_loop(t, 512);
    double kg = geom::geodesic_curvature_integral(m, loop);
    CHECK(kg == doctest::Approx(2 * pi * lam).epsilon(1e-9));
    // Gauss-Bonnet with curvature 2
    double area = geom::enclosed_area(m, loop);
    CHECK(kg == doctest::Approx(2 * pi - 2 * area).epsilon(1e-9));
  }
}

TEST_CASE("observable derivatives against finite differences") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.3, 1.3);
  auto check_obs = [&](const obs::Observable& f) {
    for (int i = 0; i < 60; ++i) {
      cplx z(u(rng), u(rng));
      auto fv = [&](cplx w) { return f.value(w); };
      CHECK(std::abs(f.d_z(z) - oracle::fd_dz(fv, z)) < 1e-8);
      CHECK(std::abs(f.laplacian(z) - oracle::fd_laplacian(fv, z)) < 1e-6);
    }
  };
  check_obs(obs::coord_x1());
  check_obs(obs::coord_x2());
  check_obs(obs::coord_x3());
  check_obs(obs::by_name("x3p:0.1"));
  check_obs(obs::by_name("x3sq"));
}

TEST_CASE("poisson bracket {x1,x2} = 2 x3, analytic and flow oracle") {
  auto x1 = obs::coord_x1();
  auto x2 = obs::coord_x2();
  auto x3 = obs::coord_x3();
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int i = 0; i < 40; ++i) {
    cplx z(u(rng), u(rng));
    double br = obs::poisson_bracket(x1, x2, z);
    CHECK(br == doctest::Approx(2.0 * x3.value(z)).epsilon(1e-10));
    double fd = oracle::flow_bracket([&](cplx w) { return x1.value(w); },
                                     [&](cplx w) { return x2.value(w); }, z);
    CHECK(std::abs(br - fd) < 1e-5);
  }
}

TEST_CASE("x3 flow is clockwise with period pi") {
  auto x3 = obs::coord_x3();
  cplx z(0.7, 0.1);
  CHECK(obs::angular_velocity(x3, z) == doctest::Approx(-2.0).epsilon(1e-12));
}
