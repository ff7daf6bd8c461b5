#ifndef BTLAB_BOHR_SOMMERFELD_HPP
#define BTLAB_BOHR_SOMMERFELD_HPP

#include <vector>

#include "btlab/fitting.hpp"
#include "btlab/geometry.hpp"
#include "btlab/observables.hpp"

namespace btlab::bohr {

using geom::KahlerModel;
using geom::LoopPath;
using geom::Twist;
using obs::Observable;

// Per-level-set geometric data on a lambda window: principal action a
// (connection-form integral of L along the ccw level loop, equal to the
// enclosed left area), subprincipal action a1 (same for L1), half-form index
// eps, subprincipal correction from the alpha-connection, and the flow
// period. Values are continuous in lambda by construction (no mod-2pi
// reduction happens anywhere).
struct ActionProfile {
  Twist twist;
  double lambda_lo, lambda_hi;
  std::vector<double> lambda_grid;
  std::vector<double> a;
  std::vector<double> a1;
  std::vector<double> f1_correction;
  std::vector<double> period;
  int eps = 1;

  fit::Pchip a_s, a1_s, corr_s, period_s;
  double total_phase(int k, double lambda) const;
  void finalize();
};

// eps from the half-form bundle: parity of the winding of the pairing
// c(theta) = <iota* phi(u^2), gamma'> along the loop, u a nonvanishing
// section of delta (the constant holomorphic frame, for which c closes up).
// Odd winding -> one component of the positivity set -> eps = 1.
int halfform_index(const KahlerModel& model, const LoopPath& loop);

// f1 may be empty (vanishing subprincipal symbol).
ActionProfile action_profile(const KahlerModel& model, Twist twist,
                             const Observable& f0, const Observable& f1,
                             double lambda_lo, double lambda_hi,
                             int grid_size = 257, int loop_samples = 512);

struct BSSet {
  int k;
  std::vector<double> points;        // sorted lambda solutions in the window
  std::vector<int> multiplicities;   // all 1 for a single component
};

// All solutions of k a + a1 + corr + eps pi in 2 pi Z on the window, by
// bracketing and bisection on the monotone total phase. Throws if the total
// phase is not strictly monotone on the grid.
BSSet solve_bs(const ActionProfile& profile, int k, double tol = 1e-12);

struct MatchReport {
  int k;
  int n_true = 0;
  int n_bs = 0;
  double max_deviation = 0.0;
  std::vector<double> deviations;
  bool counts_match = false;
};

// Pairs the eigenvalues inside (lambda_lo, lambda_hi) with the BS points.
MatchReport match_spectrum(const BSSet& bs, const std::vector<double>& eigs,
                           double lambda_lo, double lambda_hi);

struct VariationResult {
  double principal_residual;     // |(a(l') - a(l)) - Int_D omega|
  double subprincipal_residual;  // |(a1(l') - a1(l)) - Int_D omega_1|
  double area;
};

VariationResult variation_check(const KahlerModel& model, Twist twist,
                                const Observable& f0, double lambda,
                                double lambda_prime, int loop_samples = 512);

// K-trivial crosscheck: mod-2pi distance between a1 + eps pi and
// kg_coeff * Int k_g ds (ledger coefficient) on the level loop.
double geodesic_curvature_crosscheck(const KahlerModel& model,
                                     const Observable& f0, double lambda,
                                     int loop_samples = 512);

}  // namespace btlab::bohr

#endif
