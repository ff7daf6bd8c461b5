#include "btlab/observables.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace btlab::obs {

namespace {
constexpr double pi = std::numbers::pi;
}

Observable::Observable(std::string name, std::function<double(cplx)> val,
                       std::function<cplx(cplx)> dz,
                       std::function<double(cplx)> lap)
    : name_(std::move(name)),
      val_(std::move(val)),
      dz_(std::move(dz)),
      lap_(std::move(lap)) {}

double Observable::grad2(cplx z) const {
  double t = std::norm(z);
  double g = (1.0 + t) * (1.0 + t);
  return g * std::norm(d_z(z));
}

cplx Observable::ham_field(cplx z) const {
  double t = std::norm(z);
  double g = (1.0 + t) * (1.0 + t);
  // real observable: d_zbar f = conj(d_z f)
  return cplx(0.0, 1.0) * g * std::conj(d_z(z));
}

Observable coord_x1() {
  return Observable(
      "x1", [](cplx z) { return 2.0 * z.real() / (1.0 + std::norm(z)); },
      [](cplx z) {
        double t = std::norm(z);
        cplx zb = std::conj(z);
        return (1.0 - zb * zb) / ((1.0 + t) * (1.0 + t));
      },
      [](cplx z) { return -4.0 * z.real() / (1.0 + std::norm(z)); });
}

Observable coord_x2() {
  return Observable(
      "x2", [](cplx z) { return 2.0 * z.imag() / (1.0 + std::norm(z)); },
      [](cplx z) {
        double t = std::norm(z);
        cplx zb = std::conj(z);
        return cplx(0.0, -1.0) * (1.0 + zb * zb) / ((1.0 + t) * (1.0 + t));
      },
      [](cplx z) { return -4.0 * z.imag() / (1.0 + std::norm(z)); });
}

Observable coord_x3() {
  return Observable(
      "x3",
      [](cplx z) {
        double t = std::norm(z);
        return (1.0 - t) / (1.0 + t);
      },
      [](cplx z) {
        double t = std::norm(z);
        return -2.0 * std::conj(z) / ((1.0 + t) * (1.0 + t));
      },
      [](cplx z) {
        double t = std::norm(z);
        return -2.0 * (1.0 - t) / (1.0 + t);
      });
}

Observable constant(double c) {
  return Observable(
      "const", [c](cplx) { return c; }, [](cplx) { return cplx(0.0); },
      [](cplx) { return 0.0; });
}

Observable add(const Observable& a, const Observable& b, std::string name) {
  if (name.empty()) name = a.name() + "+" + b.name();
  return Observable(
      name, [a, b](cplx z) { return a.value(z) + b.value(z); },
      [a, b](cplx z) { return a.d_z(z) + b.d_z(z); },
      [a, b](cplx z) { return a.laplacian(z) + b.laplacian(z); });
}

Observable scale(double c, const Observable& a, std::string name) {
  if (name.empty()) name = std::to_string(c) + "*" + a.name();
  return Observable(
      name, [c, a](cplx z) { return c * a.value(z); },
      [c, a](cplx z) { return c * a.d_z(z); },
      [c, a](cplx z) { return c * a.laplacian(z); });
}

Observable mul(const Observable& a, const Observable& b, std::string name) {
  if (name.empty()) name = a.name() + "*" + b.name();
  return Observable(
      name, [a, b](cplx z) { return a.value(z) * b.value(z); },
      [a, b](cplx z) { return a.d_z(z) * b.value(z) + a.value(z) * b.d_z(z); },
      [a, b](cplx z) {
        // product rule for real factors:
        // Delta(fg) = f Delta g + g Delta f + 2 G Re(f_z conj(g_z))
        double t = std::norm(z);
        double g2 = (1.0 + t) * (1.0 + t);
        double cross = 2.0 * g2 * std::real(a.d_z(z) * std::conj(b.d_z(z)));
        return a.value(z) * b.laplacian(z) + b.value(z) * a.laplacian(z) +
               cross;
      });
}

Observable compose_poly(const std::vector<double>& coef, const Observable& f,
                        std::string name) {
  if (name.empty()) name = "poly(" + f.name() + ")";
  auto eval = [coef](double x) {
    double v = 0.0;
    for (std::size_t i = coef.size(); i-- > 0;) v = v * x + coef[i];
    return v;
  };
  auto eval1 = [coef](double x) {
    double v = 0.0;
    for (std::size_t i = coef.size(); i-- > 1;) v = v * x + coef[i] * double(i);
    return v;
  };
  auto eval2 = [coef](double x) {
    double v = 0.0;
    for (std::size_t i = coef.size(); i-- > 2;)
      v = v * x + coef[i] * double(i) * double(i - 1);
    return v;
  };
  return Observable(
      name, [eval, f](cplx z) { return eval(f.value(z)); },
      [eval1, f](cplx z) { return eval1(f.value(z)) * f.d_z(z); },
      [eval1, eval2, f](cplx z) {
        double x = f.value(z);
        return eval2(x) * f.grad2(z) + eval1(x) * f.laplacian(z);
      });
}

Observable by_name(const std::string& name) {
  if (name == "x1") return coord_x1();
  if (name == "x2") return coord_x2();
  if (name == "x3") return coord_x3();
  if (name == "x3sq") return compose_poly({0, 0, 1}, coord_x3(), "x3sq");
  if (name == "x3quart") return compose_poly({0, 0, 0, 0, 1}, coord_x3(), "x3quart");
  if (name == "x1x3") return mul(coord_x1(), coord_x3(), "x1x3");
  if (name.rfind("x3p:", 0) == 0) {
    double eta = std::stod(name.substr(4));
    // x3 * (1 + eta * x1)
    return add(coord_x3(), scale(eta, mul(coord_x1(), coord_x3())),
               "x3p:" + name.substr(4));
  }
  throw std::invalid_argument("unknown observable: " + name);
}

double poisson_bracket(const Observable& f, const Observable& g, cplx z) {
  return 2.0 * std::real(f.ham_field(z) * g.d_z(z));
}

double angular_velocity(const Observable& f, cplx z) {
  return std::imag(f.ham_field(z) / z);
}

std::vector<geom::LoopPath> level_set_loops(const geom::KahlerModel& model,
                                            const Observable& f, double lambda,
                                            int samples, double grad_tol) {
  // range scan to detect empty level sets
  double fmin = 1e300, fmax = -1e300;
  for (int i = 0; i <= 64; ++i) {
    double t = std::tan(0.5 * pi * (i / 65.0));  // samples [0, inf)
    for (int j = 0; j < 16; ++j) {
      cplx z = std::polar(std::sqrt(t), 2.0 * pi * j / 16.0);
      double v = f.value(z);
      fmin = std::min(fmin, v);
      fmax = std::max(fmax, v);
    }
  }
  if (lambda <= fmin || lambda >= fmax)
    throw std::domain_error("level_set_loops: empty level set");

  // radial derivative df/dt along a ray: Re(f_z z)/t
  auto df_dt = [&f](double t, double theta) {
    cplx z = std::polar(std::sqrt(t), theta);
    return std::real(f.d_z(z) * z) / t;
  };
  auto fval = [&f](double t, double theta) {
    return f.value(std::polar(std::sqrt(t), theta));
  };

  geom::LoopPath lp;
  lp.theta.resize(samples);
  lp.r.resize(samples);
  lp.dr.resize(samples);

  double t_guess = -1.0;
  for (int j = 0; j < samples; ++j) {
    double theta = 2.0 * pi * j / samples;
    lp.theta[j] = theta;
    double t = t_guess;
    if (t <= 0.0) {
      // bracket on a log grid along the ray; a single crossing is expected
      double lo = -1, hi = -1, prev_t = 1e-9, prev_v = fval(prev_t, theta) - lambda;
      int crossings = 0;
      for (int i = 1; i <= 400; ++i) {
        double ti = std::pow(10.0, -9.0 + 18.0 * i / 400.0);
        double vi = fval(ti, theta) - lambda;
        if (prev_v == 0.0 || (prev_v > 0) != (vi > 0)) {
          ++crossings;
          if (crossings == 1) {
            lo = prev_t;
            hi = ti;
          }
        }
        prev_t = ti;
        prev_v = vi;
      }
      if (crossings == 0)
        throw std::domain_error("level_set_loops: empty level set on ray");
      if (crossings > 1)
        throw std::domain_error(
            "level_set_loops: multiple components not supported");
      t = 0.5 * (lo + hi);
      // bisect a few times before Newton
      for (int i = 0; i < 40; ++i) {
        double mid = 0.5 * (lo + hi);
        if ((fval(lo, theta) - lambda > 0) == (fval(mid, theta) - lambda > 0))
          lo = mid;
        else
          hi = mid;
      }
      t = 0.5 * (lo + hi);
    }
    for (int it = 0; it < 60; ++it) {
      double g = fval(t, theta) - lambda;
      double d = df_dt(t, theta);
      double step = g / d;
      double tn = t - step;
      if (tn <= 0.0) tn = 0.5 * t;
      t = tn;
      if (std::abs(step) < 1e-15 * (1.0 + t)) break;
    }
    if (std::abs(fval(t, theta) - lambda) > 1e-10)
      throw std::runtime_error("level_set_loops: radial solve failed");
    if (t > 1e8)
      throw std::domain_error("level_set_loops: loop leaves chart");
    lp.r[j] = std::sqrt(t);
    // implicit differentiation: dt/dtheta = -f_theta / f_t
    cplx z = std::polar(std::sqrt(t), theta);
    double f_theta = 2.0 * std::real(f.d_z(z) * cplx(0, 1) * z);
    double dt_dth = -f_theta / df_dt(t, theta);
    lp.dr[j] = dt_dth / (2.0 * lp.r[j]);
    t_guess = t;
  }

  // regularity: gradient bounded away from zero on the set
  double min_grad = 1e300;
  for (int j = 0; j < samples; ++j) {
    cplx z = lp.point(j);
    min_grad = std::min(min_grad, std::sqrt(f.grad2(z)));
  }
  if (min_grad < grad_tol)
    throw std::domain_error("level_set_loops: critical value in window");

  return {lp};
}

}  // namespace btlab::obs
