#pragma once

/// @file derivatives.hpp
/// @brief First- and second-order directional derivatives of singular values
///        and of the Ky Fan k-norm, including the Omega correction matrices.

#include <vector>

#include "kyfan/types.hpp"

namespace kyfan {

/// Directional derivatives sigma_i'(X; H) for all i.
///  - i in a positive block a_g: the l_i-th eigenvalue (descending) of
///    S(U_{a_g}^T H V_{a_g});
///  - i in the zero block b: the l_i-th singular value of
///    [U_b^T H V_b, U_b^T H V_2].
/// `h` is given in the caller's orientation; it is re-oriented when
/// svd.transposed is set.
Vector sigma_dd1(const OrderedSvd& svd, const Matrix& h);

/// theta'(X; H) = sum of the first k entries of sigma_dd1.
double theta_dd1(const OrderedSvd& svd, const Matrix& h, int k);

/// The Omega correction matrix of a positive block with common value nu:
///   Omega = S1_g^T (Sigma - nu I)^+ S1_g + T1_g^T (-Sigma - nu I)^+ T1_g
///           - (1/(2 nu)) (U^T H V2)_g (U^T H V2)_g^T,
/// where S1 = S(U^T H V1), T1 = T(U^T H V1), the subscript g restricts to
/// the block's columns (rows for the last term), and the pseudoinverse
/// zeroes every diagonal entry within group_tol of nu. Requires nu > 0.
struct OmegaMatrix {
  std::vector<int> block;  ///< 0-based indices
  Matrix value;            ///< symmetric |block| x |block|
};
OmegaMatrix omega_matrix(const OrderedSvd& svd, const Matrix& h,
                         const std::vector<int>& block, double nu);

/// Parabolic second-order directional derivatives sigma_i''(X; H, W) for all
/// i, covering the three branches (positive block; zero block with positive
/// inner singular value; zero block with zero inner singular value).
Vector sigma_dd2(const OrderedSvd& svd, const Matrix& h, const Matrix& w,
                 double group_tol = -1.0);

/// theta''(X; H, W) = sum of the first k entries of sigma_dd2.
double theta_dd2(const OrderedSvd& svd, const Matrix& h, const Matrix& w,
                 int k);

}  // namespace kyfan
