#pragma once

/// @file spectral.hpp
/// @brief Deterministic ordered SVD, equal-value grouping, and gauge
///        (equivalent-SVD) utilities.

#include <cstdint>

#include "kyfan/types.hpp"

namespace kyfan {

/// Default grouping tolerance for a matrix with largest singular value s1.
double default_group_tol(double sigma1);

/// Group a non-increasing nonnegative vector into maximal blocks of equal
/// values by transitive closure of |x_i - x_j| <= group_tol; values within
/// group_tol of zero form the zero block. `n` is the ambient column count.
GroupPartition group_values(const Vector& sigma, double group_tol, int n);

/// Full SVD of `a` with non-increasing singular values and equal-value
/// grouping. Inputs with rows > cols are transposed internally and the
/// result carries transposed = true.
///
/// Postconditions: u, v orthogonal to 1e-12; reconstruction error at most
/// 1e-10 * max(1, sigma_1); grouping per group_values.
OrderedSvd ordered_svd(const Matrix& a, double group_tol = -1.0);

/// Build an OrderedSvd from already-validated factors (u, v orthogonal,
/// sigma non-increasing and nonnegative). Used to carry the spectral data of
/// matrices that share factors with an existing decomposition.
OrderedSvd svd_from_factors(const Matrix& u, const Matrix& v,
                            const Vector& sigma, double group_tol,
                            bool transposed = false);

/// Another valid SVD of the same matrix: applies an independent random
/// orthogonal rotation within each equal-value block (to the matching
/// columns of u and v1) and, for the zero block, an independent pair of
/// orthogonal mixes of the u_b columns and of the v columns indexed b and c.
/// Deterministic per seed; sigma is unchanged.
OrderedSvd equivalent_svd(const OrderedSvd& svd, std::uint64_t seed);

}  // namespace kyfan
