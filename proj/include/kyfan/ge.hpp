#pragma once

/// @file ge.hpp
/// @brief Validation of solution pairs of the generalized equation
///        0 in -S + d theta(X) and derivation of the index-set taxonomy
///        consumed by the cone and sigma-term modules.

#include <optional>
#include <string>
#include <vector>

#include "kyfan/types.hpp"

namespace kyfan {

enum class CaseTag { POSITIVE_SIGMA_K, ZERO_SIGMA_K };

enum class Region { ALPHA, BETA1, BETA2, BETA3, GAMMA };

/// One maximal equal-sigma block of X = X_bar + S_bar, annotated with the
/// region it belongs to and the common values of sigma_bar / u_bar on it.
struct BlockInfo {
  IndexBlock idx;     ///< indices within {0..m-1}
  Region region = Region::GAMMA;
  double nu_bar = 0;  ///< common sigma_bar value on the block
  double mu_bar = 0;  ///< common u_bar value on the block
  bool is_zero_block = false;  ///< true for the sigma(X) = 0 block b
};

/// Residuals returned by check_subgradient_duality.
struct DualityCheck {
  bool ok = false;
  double dual_norm = 0;          ///< dual norm of S_bar
  double dual_norm_residual = 0; ///< max(0, dual_norm - 1)
  double pairing_residual = 0;   ///< |<S_bar, X_bar> - theta(X_bar)| (scaled)
  double theta_x = 0;            ///< theta(X_bar)
};

/// Validated solution pair with the full index taxonomy. All index data is
/// 0-based and refers to the internal orientation (transposed when the
/// inputs had more rows than columns); x_bar/s_bar keep the caller's
/// orientation while x_bar_i/s_bar_i are internal.
struct GeAnalysis {
  Matrix x_bar, s_bar;      ///< as passed in
  Matrix x_bar_i, s_bar_i;  ///< internal orientation (m <= n)
  int k = 1;
  OrderedSvd svd;           ///< ordered SVD of X = X_bar + S_bar (internal)

  Vector sigma_bar;  ///< sigma(X_bar), snapped to block-constant values
  Vector u_bar;      ///< sigma(S_bar), snapped to block-constant values
  CaseTag case_tag = CaseTag::POSITIVE_SIGMA_K;

  int k0 = 0;  ///< |alpha|; alpha = {0..k0-1}
  int k1 = 0;  ///< beta = {k0..k1-1}; gamma = {k1..m-1}
  std::vector<int> alpha, beta, gamma, beta1, beta2, beta3;

  /// Block counters (numbers of blocks): alpha spans blocks 1..r0, beta1
  /// blocks r0+1..r_tilde0, beta2 blocks r_tilde0+1..r_tilde1, beta3 blocks
  /// r_tilde1+1..r1, gamma blocks r1+1..(#blocks).
  int r0 = 0, r_tilde0 = 0, r_tilde1 = 0, r1 = 0;

  /// All equal-sigma blocks of X (including the zero block when nonempty),
  /// in order, annotated with regions and block values.
  std::vector<BlockInfo> blocks;

  double sigma_k_bar = 0;     ///< common sigma_bar value on beta (0 in ZERO case)
  double dual_norm_s = 0;     ///< dual norm of S_bar
  double nuclear_norm_s = 0;  ///< nuclear norm of S_bar
  bool nuclear_eq_k = false;  ///< ||S_bar||_* == k within tol_class * k
  bool dual_norm_lt_1 = false;///< dual norm < 1 - tol_class (interior multiplier)

  double sigma1_x = 0;   ///< scale: largest singular value of X
  double tol = 0;        ///< validation tolerance used
  double tol_class = 0;  ///< classification band used
  double group_tol = 0;  ///< grouping tolerance used

  int m() const { return static_cast<int>(sigma_bar.size()); }
  int n() const { return svd.n(); }
  bool transposed() const { return svd.transposed; }

  /// Direction re-oriented to the internal convention.
  Matrix orient(const Matrix& h) const;

  /// Spectral data of X_bar with the taxonomy-derived grouping
  /// (alpha blocks, beta as one block in the POSITIVE case, gamma blocks,
  /// zero block), sharing the factors of `svd`.
  OrderedSvd xbar_svd() const;

  /// Spectral data of S_bar with its natural grouping (alpha and beta1
  /// merged at value 1, beta2 blocks, zero block beta3 + gamma).
  OrderedSvd sbar_svd() const;

  /// Moore-Penrose pseudoinverse of X_bar (internal orientation, n x m).
  Matrix xbar_pinv() const;
  /// Moore-Penrose pseudoinverse of S_bar (internal orientation, n x m).
  Matrix sbar_pinv() const;
};

/// Membership test S_bar in d theta(X_bar): dual-norm feasibility plus the
/// pairing equality <S_bar, X_bar> = theta(X_bar), with residuals.
DualityCheck check_subgradient_duality(const Matrix& x_bar,
                                       const Matrix& s_bar, int k,
                                       double tol = 1e-9);

/// Full validation + taxonomy derivation. Throws KyfanError with code
/// SUBGRADIENT_DUALITY_VIOLATION, SIMULTANEOUS_SVD_VIOLATION,
/// CONDITION_VIOLATION (message names the failed inequality), or
/// DEGENERATE_CLASSIFICATION.
GeAnalysis analyze_ge(const Matrix& x_bar, const Matrix& s_bar, int k,
                      double tol = 1e-9, double tol_class = 1e-8,
                      double group_tol = -1.0);

/// Strict complementarity: POSITIVE case requires tol < u_i < 1 - tol on
/// beta; ZERO case requires u_i < 1 - tol on beta and sum(u_beta) < k - k0
/// - tol. Returns the minimum margin.
struct StrictCompResult {
  bool strict = false;
  double margin = 0;
};
StrictCompResult check_strict_complementarity(const GeAnalysis& an,
                                              double tol = 1e-8);

/// User-supplied basis of the range of the constraint derivative.
struct LinearMapRange {
  std::vector<Matrix> basis;
};

/// Nondegeneracy: span(range.basis) + T^lin(X_bar) = R^{m x n}, decided by
/// stacking an orthonormal basis of T^lin with the user basis and testing
/// full rank m*n with singular-value threshold tol.
bool check_nondegeneracy(const GeAnalysis& an, const LinearMapRange& range,
                         double tol = 1e-9);

/// Orthonormal basis of the lineality space T^lin(X_bar) (internal
/// orientation), from its explicit block description.
std::vector<Matrix> tlin_basis(const GeAnalysis& an);

}  // namespace kyfan
