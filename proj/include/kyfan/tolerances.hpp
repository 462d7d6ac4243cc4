#pragma once

/// @file tolerances.hpp
/// @brief Every numeric tolerance used by the library and its test suite,
///        pinned in one place.
///
/// Scale conventions:
///  - tolerances marked "scaled" are multiplied by max(1, scale) where the
///    scale is stated at the use site (typically sigma_1 of the matrix at
///    hand or ||H||_F of a direction);
///  - everything else is absolute.

namespace kyfan::tol {

/// Orthogonality of SVD factors: ||Q^T Q - I||_max.
inline constexpr double ortho = 1e-12;

/// SVD reconstruction: ||U [Diag(sigma) 0] V^T - A||_F, scaled by sigma_1.
inline constexpr double reconstruct = 1e-10;

/// Default relative grouping tolerance for equal singular values:
/// group_tol = group_rel * max(1, sigma_1).
inline constexpr double group_rel = 1e-8;

/// Classification band for u_bar against {0, 1} and for the
/// sigma_bar_k = 0 case decision (scaled by max(1, sigma_1(X))).
inline constexpr double tol_class = 1e-8;

/// Moreau identity: max-abs of Pr_theta(X) + Pr_theta*(X) - X.
inline constexpr double moreau = 1e-10;

/// Closed-form projection vs. Dykstra oracle (max-abs).
inline constexpr double prox_vs_dykstra = 1e-7;

/// KKT residual of the vector prox / projection.
inline constexpr double kkt = 1e-9;

/// Feasibility of projections onto the dual ball after clipping.
inline constexpr double dual_feasibility = 1e-12;

/// Tie tolerance in the one-dimensional multiplier search.
inline constexpr double multiplier_tie = 1e-12;

/// Default validation tolerance for generalized-equation residuals.
inline constexpr double ge_default = 1e-9;

/// First-order finite differences: |fd - theta'| <= fd_first * max(1,|theta'|)
/// at t = 1e-5; error ratio between t=1e-3 and t=1e-4 must show slope >= 1.8.
inline constexpr double fd_first = 1e-3;
inline constexpr double fd_slope = 1.8;

/// Second-order finite differences: relative tolerance on the parabolic
/// quotient (evaluated at t = 1e-4 inside the battery, t = 1e-3 in the
/// standalone oracle comparisons).
inline constexpr double fd_second = 1e-2;

/// Decay factors for the step-halving escape hatch on ill-conditioned
/// spectra (tiny nonzero gaps): the FD error of a correct formula shrinks
/// with t (linearly for the first order at fixed lift, at least this fast
/// for the parabolic quotient), while a wrong formula leaves a constant
/// offset that cannot decay. A check passes if the small-step error is
/// below the absolute band or below decay * (large-step error).
inline constexpr double fd_first_decay = 0.2;
inline constexpr double fd_second_decay = 0.35;

/// Cone membership residual threshold, scaled by max(1, ||H||_F).
inline constexpr double cone = 1e-8;

/// Sign bound for the sigma-term: Upsilon <= ups_sign.
inline constexpr double ups_sign = 1e-9;

/// Two-route sigma-term agreement, scaled by max(1, ||H||_F^2).
inline constexpr double route_gap = 1e-9;

/// Support-function one-sided bound slack for sampled W.
inline constexpr double support_bound = 1e-7;

/// Support-function attainment at W* (ZERO case).
inline constexpr double support_attain = 1e-8;

/// Gauge invariance of scalar outputs under equivalent SVDs.
inline constexpr double gauge = 1e-8;

/// Dykstra stopping: successive change for convergence, feasibility of the
/// returned point, and the non-convergence flag threshold.
inline constexpr double dykstra_converge = 1e-12;
inline constexpr double dykstra_feasible = 1e-10;
inline constexpr double dykstra_flag = 1e-9;

/// Special-case reductions (k=1 spectral, k=m nuclear).
inline constexpr double special_case = 1e-10;

/// Subgradient-inequality sampling slack.
inline constexpr double subgrad_sample = 1e-9;

}  // namespace kyfan::tol
