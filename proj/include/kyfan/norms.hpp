#pragma once

/// @file norms.hpp
/// @brief Ky Fan k-norm, its dual norm, the vector k-norm proximal map,
///        projection onto the dual-norm unit ball, and the matrix proximal
///        pair.

#include "kyfan/types.hpp"

namespace kyfan {

/// Sum of the k largest singular values of `a`. Requires 1 <= k <= min(m,n).
double kyfan_norm(const Matrix& a, int k);

/// Dual norm: max(sigma_1, (sum of all singular values)/k).
double dual_kyfan_norm(const Matrix& a, int k);

/// Vector k-norm of x: sum of the k largest absolute entries.
double vector_knorm(const Vector& x, int k);

/// Euclidean projection onto B* = { s : ||s||_inf <= 1, ||s||_1 <= k }.
/// Closed form: project |x| onto the box-and-simplex intersection via a
/// one-dimensional multiplier search with per-coordinate clamping, then
/// restore signs. Feasible exactly (after clipping) to 1e-12.
Vector project_dual_ball(const Vector& x, int k);

/// Proximal map of the vector k-norm: g(x) = x - project_dual_ball(x).
/// Satisfies x - g(x) in B* and <x - g(x), g(x)> = ||g(x)||_(k) to 1e-9.
Vector vector_knorm_prox(const Vector& x, int k);

/// Matrix proximal pair at x: decompose, apply the vector prox to sigma,
/// recompose both halves with the same factors. prox_theta + prox_theta_star
/// reconstructs x to 1e-10 and the pair solves the generalized equation
/// 0 in -S + d theta(X) at X = prox_theta.
ProxPair matrix_prox_pair(const Matrix& x, int k, double group_tol = -1.0);

}  // namespace kyfan
