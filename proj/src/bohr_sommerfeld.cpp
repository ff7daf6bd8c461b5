#include "btlab/bohr_sommerfeld.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "btlab/conventions.hpp"
#include "btlab/kernels.hpp"

namespace btlab::bohr {

namespace {
constexpr double pi = std::numbers::pi;

// Sign of the angular velocity of the f0-flow along the loop. The profile
// phases are measured along the flow orientation; a sign change would mean
// the loop is not a single flow orbit.
double flow_sign(const Observable& f0, const LoopPath& loop) {
  double s = 0.0;
  for (std::size_t j = 0; j < loop.size(); ++j) {
    double nu = obs::angular_velocity(f0, loop.point(j));
    if (nu == 0.0 || (s != 0.0 && (nu > 0) != (s > 0)))
      throw std::runtime_error("flow orientation changes along the loop");
    s = nu;
  }
  return s > 0 ? 1.0 : -1.0;
}
}  // namespace

double ActionProfile::total_phase(int k, double lambda) const {
  return k * a_s(lambda) + a1_s(lambda) + corr_s(lambda) +
         conv::halfform_pi_sign * eps * pi;
}

void ActionProfile::finalize() {
  a_s = fit::Pchip(lambda_grid, a);
  a1_s = fit::Pchip(lambda_grid, a1);
  corr_s = fit::Pchip(lambda_grid, f1_correction);
  period_s = fit::Pchip(lambda_grid, period);
}

int halfform_index(const KahlerModel& model, const LoopPath& loop) {
  (void)model;
  // c(theta) = <dz, gamma'> in the constant delta-frame; winding parity.
  const std::size_t M = loop.size();
  double prev = std::arg(loop.tangent(0));
  double total = 0.0;
  double max_step = 0.0;
  for (std::size_t j = 1; j <= M; ++j) {
    double cur = std::arg(loop.tangent(j % M));
    double step = std::remainder(cur - prev, 2.0 * pi);
    max_step = std::max(max_step, std::abs(step));
    total += step;
    prev = cur;
  }
  if (max_step >= pi / 4.0)
    throw std::runtime_error(
        "halfform_index: tangent winding under-sampled, refine the loop");
  double w = total / (2.0 * pi);
  long wi = std::lround(w);
  if (std::abs(w - wi) > 1e-6)
    throw std::runtime_error("halfform_index: non-integer tangent winding");
  return static_cast<int>(((wi % 2) + 2) % 2);
}

ActionProfile action_profile(const KahlerModel& model, Twist twist,
                             const Observable& f0, const Observable& f1,
                             double lambda_lo, double lambda_hi, int grid_size,
                             int loop_samples) {
  if (!(lambda_lo < lambda_hi))
    throw std::invalid_argument("action_profile: empty window");
  ActionProfile p;
  p.twist = twist;
  p.lambda_lo = lambda_lo;
  p.lambda_hi = lambda_hi;
  p.lambda_grid.resize(grid_size);
  p.a.resize(grid_size);
  p.a1.resize(grid_size);
  p.f1_correction.resize(grid_size);
  p.period.resize(grid_size);

  auto L = geom::bundle(geom::BundleKind::prequantum);
  auto L1 = geom::l1_bundle(twist);

  int eps = -1;
  for (int i = 0; i < grid_size; ++i) {
    double lam = lambda_lo + (lambda_hi - lambda_lo) * i / (grid_size - 1.0);
    p.lambda_grid[i] = lam;
    auto loops = obs::level_set_loops(model, f0, lam, loop_samples);
    const auto& loop = loops.front();
    double sgn = flow_sign(f0, loop);
    p.a[i] = sgn * geom::holonomy_phase(L, loop);
    p.a1[i] = sgn * geom::holonomy_phase(L1, loop);

    // flow period T = Int dt and alpha-correction -Int f1 dt over one period
    const std::size_t M = loop.size();
    std::vector<double> inv_nu(M), f1nu(M), w(M, 2.0 * pi / double(M));
    for (std::size_t j = 0; j < M; ++j) {
      geom::cplx z = loop.point(j);
      double nu = obs::angular_velocity(f0, z);
      inv_nu[j] = 1.0 / nu;
      f1nu[j] = f1.empty() ? 0.0 : f1.value(z) / nu;
    }
    p.period[i] = sgn * kern::dot(w.data(), inv_nu.data(), M);
    p.f1_correction[i] =
        conv::sub_sign * sgn * kern::dot(w.data(), f1nu.data(), M);

    int e = halfform_index(model, loop);
    if (eps < 0)
      eps = e;
    else if (e != eps)
      throw std::runtime_error("action_profile: half-form index jumped");
  }
  p.eps = eps;

  // monotone principal action is required by the solver
  bool inc = true, dec = true;
  for (int i = 0; i + 1 < grid_size; ++i) {
    if (p.a[i + 1] <= p.a[i]) inc = false;
    if (p.a[i + 1] >= p.a[i]) dec = false;
  }
  if (!inc && !dec)
    throw std::runtime_error("action_profile: principal action not monotone");
  for (int i = 0; i + 1 < grid_size; ++i)
    if (std::abs(p.a[i + 1] - p.a[i]) >= pi)
      throw std::runtime_error("action_profile: unwrapping step too large");

  p.finalize();
  return p;
}

BSSet solve_bs(const ActionProfile& profile, int k, double tol) {
  BSSet out;
  out.k = k;
  const auto& grid = profile.lambda_grid;
  const int n = static_cast<int>(grid.size());
  std::vector<double> theta(n);
  for (int i = 0; i < n; ++i)
    theta[i] = profile.total_phase(k, grid[i]);
  bool inc = true, dec = true;
  for (int i = 0; i + 1 < n; ++i) {
    if (theta[i + 1] <= theta[i]) inc = false;
    if (theta[i + 1] >= theta[i]) dec = false;
  }
  if (!inc && !dec)
    throw std::runtime_error("solve_bs: total phase not monotone on window");

  double lo = std::min(theta.front(), theta.back());
  double hi = std::max(theta.front(), theta.back());
  long n_lo = static_cast<long>(std::ceil(lo / (2.0 * pi) - 1e-12));
  long n_hi = static_cast<long>(std::floor(hi / (2.0 * pi) + 1e-12));
  for (long q = n_lo; q <= n_hi; ++q) {
    double target = 2.0 * pi * q;
    int bi = -1;
    for (int i = 0; i + 1 < n; ++i) {
      double t0 = theta[i] - target, t1 = theta[i + 1] - target;
      if (t0 == 0.0 || (t0 < 0) != (t1 < 0) || t1 == 0.0) {
        bi = i;
        break;
      }
    }
    if (bi < 0) continue;
    double a = grid[bi], b = grid[bi + 1];
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (a + b);
      double v = profile.total_phase(k, mid) - target;
      double va = profile.total_phase(k, a) - target;
      if ((va < 0) == (v < 0))
        a = mid;
      else
        b = mid;
      if (b - a < tol) break;
    }
    out.points.push_back(0.5 * (a + b));
  }
  std::sort(out.points.begin(), out.points.end());
  out.multiplicities.assign(out.points.size(), 1);
  return out;
}

MatchReport match_spectrum(const BSSet& bs, const std::vector<double>& eigs,
                           double lambda_lo, double lambda_hi) {
  MatchReport rep;
  rep.k = bs.k;
  std::vector<double> ev;
  for (double e : eigs)
    if (e > lambda_lo && e < lambda_hi) ev.push_back(e);
  std::sort(ev.begin(), ev.end());
  std::vector<double> ps;
  for (double p : bs.points)
    if (p > lambda_lo && p < lambda_hi) ps.push_back(p);
  rep.n_true = static_cast<int>(ev.size());
  rep.n_bs = static_cast<int>(ps.size());
  rep.counts_match = (rep.n_true == rep.n_bs);
  if (rep.counts_match) {
    for (std::size_t j = 0; j < ev.size(); ++j) {
      double d = std::abs(ev[j] - ps[j]);
      rep.deviations.push_back(d);
      rep.max_deviation = std::max(rep.max_deviation, d);
    }
  } else {
    rep.max_deviation = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

VariationResult variation_check(const KahlerModel& model, Twist twist,
                                const Observable& f0, double lambda,
                                double lambda_prime, int loop_samples) {
  if (!(lambda_prime <= lambda))
    throw std::invalid_argument("variation_check: need lambda' <= lambda");
  auto L = geom::bundle(geom::BundleKind::prequantum);
  auto L1 = geom::l1_bundle(twist);
  auto lo = obs::level_set_loops(model, f0, lambda_prime, loop_samples).front();
  auto hi = obs::level_set_loops(model, f0, lambda, loop_samples).front();
  double sgn = flow_sign(f0, hi);
  // for these height-type observables the loop at larger lambda is inner
  double area = geom::area_between(model, hi, lo);
  double da = sgn * (geom::holonomy_phase(L, hi) - geom::holonomy_phase(L, lo));
  double da1 =
      sgn * (geom::holonomy_phase(L1, hi) - geom::holonomy_phase(L1, lo));
  double s1 = geom::omega1_scalar(twist);
  return VariationResult{std::abs(da - area), std::abs(da1 - s1 * area), area};
}

double geodesic_curvature_crosscheck(const KahlerModel& model,
                                     const Observable& f0, double lambda,
                                     int loop_samples) {
  auto loop = obs::level_set_loops(model, f0, lambda, loop_samples).front();
  double sgn = flow_sign(f0, loop);
  auto L1 = geom::l1_bundle(Twist::trivial);
  double a1 = sgn * geom::holonomy_phase(L1, loop);
  int eps = halfform_index(model, loop);
  double kg = sgn * geom::geodesic_curvature_integral(model, loop);
  double diff = (a1 + eps * pi) - conv::kg_coeff * kg;
  return std::abs(std::remainder(diff, 2.0 * pi));
}

}  // namespace btlab::bohr
