#ifndef BTLAB_CONVENTIONS_HPP
#define BTLAB_CONVENTIONS_HPP

// Single source of truth for every orientation and sign choice the theory
// leaves to convention. Fixed once by requiring that the predicted and exact
// spectra coincide on the model operator (see tests/acceptance.cpp, A1/A3);
// nothing else in the code base is allowed to introduce a sign of its own.
namespace btlab::conv {

// Loops are stored counterclockwise in the north chart; the "enclosed disk"
// of a contractible loop is the one on its left (the northern disk).
inline constexpr int loop_orientation = +1;

// Holonomy of a bundle with curvature scalar c along a ccw contractible loop
// is exp(i * hol_sign * c * area_left).
inline constexpr double hol_sign = +1.0;

// Hamiltonian vector field convention: i_X omega = -df, which in the chart
// gives X^z = i (1+|z|^2)^2 d_zbar f and the bracket {f,g} = X_f(g) with
// {x1,x2} = +2 x3.
inline constexpr double hamiltonian_sign = -1.0;

// Action-profile phases (a, a1, alpha-correction, k_g) are measured along
// the Hamiltonian flow of f0; loops are stored ccw and the profile applies
// sign(nu). The alpha-correction is sub_sign * Int f1 dt over one flow
// period (= -Int f1 dt, the flat-section holonomy of nabla + alpha).
inline constexpr double sub_sign = -1.0;

// Bohr-Sommerfeld total phase: k*a + a1 + corr + eps*pi in 2*pi*Z.
inline constexpr double halfform_pi_sign = +1.0;

// Geodesic-curvature crosscheck (K trivial): a1 + eps*pi is congruent to
// kg_coeff * Int k_g ds (mod 2pi), both sides flow-oriented. The half
// factor reflects that the half-form bundle carries half of the tangent
// rotation.
inline constexpr double kg_coeff = -0.5;

// Branch of det^{-1/2}[(1/i) phi_yy]: principal square root, continuous
// deformation from the identity-Hessian case phi_yy = i*Id where d = 1.
// Z4 transport orientation: holonomy equals i^{+maslov mod 4}.
inline constexpr int z4_branch = +1;

}  // namespace btlab::conv

#endif
