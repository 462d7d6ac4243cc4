#pragma once

/// @file types.hpp
/// @brief Common value types shared by every module.

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kyfan {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Typed error carrying a stable machine-readable code alongside the message.
/// Codes used by the library:
///   INPUT_ERROR, PARAMETER_ERROR, DECOMPOSITION_FAILURE,
///   SUBGRADIENT_DUALITY_VIOLATION, SIMULTANEOUS_SVD_VIOLATION,
///   CONDITION_VIOLATION, DEGENERATE_CLASSIFICATION, ROUTE_DISAGREEMENT.
class KyfanError : public std::runtime_error {
 public:
  KyfanError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Half-open style index block [first, last], 0-based inclusive.
/// Empty blocks are represented by first > last.
struct IndexBlock {
  int first = 0;
  int last = -1;
  int size() const { return last - first + 1 > 0 ? last - first + 1 : 0; }
  bool empty() const { return size() == 0; }
};

/// Partition of {0..m-1} into maximal blocks of equal positive singular
/// values a_1..a_r, the zero block b, and the implicit column tail
/// c = {m..n-1}. Also carries the per-index within-block rank l_i (1-based)
/// and offset s_i (number of indices preceding the block), so that
/// i = s_i + l_i - 1 in 0-based terms.
struct GroupPartition {
  std::vector<IndexBlock> blocks;  ///< positive-value blocks a_1..a_r
  IndexBlock zero_block;           ///< b (possibly empty)
  int m = 0;                       ///< number of singular values
  int n = 0;                       ///< ambient column count (n >= m)
  std::vector<int> l;              ///< 1-based rank of i within its block
  std::vector<int> s;              ///< block offset of i

  int r() const { return static_cast<int>(blocks.size()); }
};

/// Full SVD with descending singular values plus equal-value grouping.
/// If `transposed` is set, u/v factor the transpose of the matrix that was
/// passed in (inputs with more rows than columns are transposed internally);
/// all direction-taking operations accept directions in the caller's
/// orientation and re-orient internally.
struct OrderedSvd {
  Matrix u;        ///< m x m orthogonal
  Matrix v;        ///< n x n orthogonal
  Vector sigma;    ///< length m, non-increasing, nonnegative
  GroupPartition groups;
  double group_tol = 0.0;
  bool transposed = false;

  int m() const { return static_cast<int>(sigma.size()); }
  int n() const { return static_cast<int>(v.cols()); }
  Eigen::Ref<const Matrix> v1() const { return v.leftCols(m()); }
  Eigen::Ref<const Matrix> v2() const { return v.rightCols(n() - m()); }
  /// Reassembled matrix U [Diag(sigma) 0] V^T in the internal orientation.
  Matrix reassemble() const;
};

/// Moreau proximal pair at X: prox of the norm and prox of its conjugate.
struct ProxPair {
  Matrix prox_theta;       ///< Pr_theta(X)
  Matrix prox_theta_star;  ///< Pr_theta*(X) = X - Pr_theta(X)
  Vector sigma_bar;        ///< singular values of Pr_theta(X)
  Vector u_bar;            ///< singular values of Pr_theta*(X)
};

}  // namespace kyfan
