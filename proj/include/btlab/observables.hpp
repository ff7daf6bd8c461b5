#ifndef BTLAB_OBSERVABLES_HPP
#define BTLAB_OBSERVABLES_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "btlab/geometry.hpp"

namespace btlab::obs {

using geom::cplx;

// Real-valued observable on the model with analytic first derivative and
// holomorphic Laplacian Delta f = G^{z zbar} d_z d_zbar f. The coordinate
// functions satisfy Delta x_i = -2 x_i and {x1, x2} = 2 x3 under the
// area-2pi normalization.
class Observable {
 public:
  Observable() = default;
  Observable(std::string name, std::function<double(cplx)> val,
             std::function<cplx(cplx)> dz, std::function<double(cplx)> lap);

  const std::string& name() const { return name_; }
  double value(cplx z) const { return val_(z); }
  cplx d_z(cplx z) const { return dz_(z); }
  double laplacian(cplx z) const { return lap_(z); }

  // G^{z zbar} |f_z|^2, the squared gradient in the chain rule for
  // Delta(g o f) = g''(f) grad2 + g'(f) Delta f
  double grad2(cplx z) const;

  // Hamiltonian vector field X^z = i (1+|z|^2)^2 d_zbar f  (i_X omega = -df)
  cplx ham_field(cplx z) const;

  bool empty() const { return !val_; }

 private:
  std::string name_;
  std::function<double(cplx)> val_;
  std::function<cplx(cplx)> dz_;
  std::function<double(cplx)> lap_;
};

Observable coord_x1();
Observable coord_x2();
Observable coord_x3();
Observable constant(double c);

Observable add(const Observable& a, const Observable& b, std::string name = "");
Observable scale(double c, const Observable& a, std::string name = "");
Observable mul(const Observable& a, const Observable& b, std::string name = "");
// g(f) for polynomial g given by coefficients g(x) = sum_i coef[i] x^i
Observable compose_poly(const std::vector<double>& coef, const Observable& f,
                        std::string name = "");

// Named registry used by the CLI: x1, x2, x3, x3sq, x1x3,
// and x3p:<eta> = x3 * (1 + eta * x1).
Observable by_name(const std::string& name);

// Poisson bracket {f, g} = X_f(g), real-valued.
double poisson_bracket(const Observable& f, const Observable& g, cplx z);

// signed angular velocity dtheta/ds of the Hamiltonian flow at z != 0
double angular_velocity(const Observable& f, cplx z);

// Level-set extraction: one ccw LoopPath per connected component of
// {f = lambda} (this model's observables yield a single latitude-type
// component on the windows of interest). Throws std::domain_error for an
// empty level set, a critical value (gradient below grad_tol on the set),
// or a loop leaving the chart.
std::vector<geom::LoopPath> level_set_loops(const geom::KahlerModel& model,
                                            const Observable& f, double lambda,
                                            int samples = 512,
                                            double grad_tol = 1e-6);

}  // namespace btlab::obs

#endif
