/// @file spectral.cpp
/// @brief Ordered SVD, equal-value grouping, and gauge rotations.

#include "kyfan/spectral.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>

#include "kyfan/tolerances.hpp"

namespace kyfan {

namespace {

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) {
    throw KyfanError("INPUT_ERROR", std::string(what) + " has non-finite entries");
  }
}

/// Orthogonality check ||Q^T Q - I||_max <= tol.
bool is_orthogonal(const Matrix& q, double tol) {
  const Matrix g = q.transpose() * q - Matrix::Identity(q.cols(), q.cols());
  return g.cwiseAbs().maxCoeff() <= tol;
}

/// Haar-distributed orthogonal matrix: QR of a Gaussian draw with the sign
/// convention diag(R) > 0, which makes the result unique and deterministic.
Matrix haar_orthogonal(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace

Matrix OrderedSvd::reassemble() const {
  Matrix d = Matrix::Zero(m(), n());
  d.diagonal().head(m()) = sigma;
  return u * d * v.transpose();
}

double default_group_tol(double sigma1) {
  return tol::group_rel * std::max(1.0, sigma1);
}

GroupPartition group_values(const Vector& sigma, double group_tol, int n) {
  const int m = static_cast<int>(sigma.size());
  GroupPartition g;
  g.m = m;
  g.n = n;
  g.l.assign(m, 0);
  g.s.assign(m, 0);
  g.zero_block = IndexBlock{m, m - 1};  // empty by default

  // Cluster adjacent values (the vector is sorted, so transitive closure of
  // |x_i - x_j| <= tol reduces to chaining adjacent gaps).
  std::vector<IndexBlock> clusters;
  int start = 0;
  for (int i = 1; i <= m; ++i) {
    if (i == m || sigma(i - 1) - sigma(i) > group_tol) {
      clusters.push_back(IndexBlock{start, i - 1});
      start = i;
    }
  }
  // The trailing cluster is the zero block iff it reaches down to zero.
  for (const IndexBlock& c : clusters) {
    const bool is_zero = sigma(c.last) <= group_tol;
    if (is_zero && c.last == m - 1) {
      g.zero_block = c;
    } else {
      g.blocks.push_back(c);
    }
  }
  auto fill_ranks = [&g](const IndexBlock& b) {
    for (int i = b.first; i <= b.last; ++i) {
      g.s[i] = b.first;
      g.l[i] = i - b.first + 1;
    }
  };
  for (const IndexBlock& b : g.blocks) fill_ranks(b);
  if (!g.zero_block.empty()) fill_ranks(g.zero_block);
  return g;
}

OrderedSvd ordered_svd(const Matrix& a, double group_tol) {
  require_finite(a, "input matrix");
  if (a.rows() < 1 || a.cols() < 1) {
    throw KyfanError("INPUT_ERROR", "matrix must be at least 1x1");
  }
  const bool transposed = a.rows() > a.cols();
  const Matrix b = transposed ? Matrix(a.transpose()) : a;

  Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  OrderedSvd out;
  out.u = svd.matrixU();
  out.v = svd.matrixV();
  out.sigma = svd.singularValues();
  out.transposed = transposed;

  const double s1 = out.sigma.size() > 0 ? out.sigma(0) : 0.0;
  out.group_tol = group_tol >= 0 ? group_tol : default_group_tol(s1);
  out.groups = group_values(out.sigma, out.group_tol, static_cast<int>(out.v.cols()));

  if (!is_orthogonal(out.u, tol::ortho) || !is_orthogonal(out.v, tol::ortho)) {
    throw KyfanError("DECOMPOSITION_FAILURE", "SVD factors lost orthogonality");
  }
  const double recon = (out.reassemble() - b).norm();
  if (recon > tol::reconstruct * std::max(1.0, s1)) {
    throw KyfanError("DECOMPOSITION_FAILURE", "SVD reconstruction error too large");
  }
  return out;
}

OrderedSvd svd_from_factors(const Matrix& u, const Matrix& v,
                            const Vector& sigma, double group_tol,
                            bool transposed) {
  OrderedSvd out;
  out.u = u;
  out.v = v;
  out.sigma = sigma;
  out.transposed = transposed;
  const double s1 = sigma.size() > 0 ? sigma(0) : 0.0;
  out.group_tol = group_tol >= 0 ? group_tol : default_group_tol(s1);
  out.groups = group_values(sigma, out.group_tol, static_cast<int>(v.cols()));
  return out;
}

OrderedSvd equivalent_svd(const OrderedSvd& svd, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  OrderedSvd out = svd;
  const int m = svd.m();
  const int n = svd.n();

  // Rotate within each positive equal-value block: the same orthogonal Q on
  // the matching columns of u and v1 leaves U [Diag(sigma) 0] V^T unchanged
  // because the block of Diag(sigma) is a multiple of the identity.
  for (const IndexBlock& b : svd.groups.blocks) {
    const int d = b.size();
    const Matrix q = haar_orthogonal(d, rng);
    out.u.middleCols(b.first, d) = svd.u.middleCols(b.first, d) * q;
    out.v.middleCols(b.first, d) = svd.v.middleCols(b.first, d) * q;
  }
  // The zero block contributes nothing to the reassembly, so the u columns
  // of b and the v columns of b and c may be mixed independently.
  const IndexBlock& zb = svd.groups.zero_block;
  if (!zb.empty() || n > m) {
    const int db = zb.size();
    if (db > 0) {
      const Matrix qu = haar_orthogonal(db, rng);
      out.u.middleCols(zb.first, db) = svd.u.middleCols(zb.first, db) * qu;
    }
    const int dv = db + (n - m);
    if (dv > 0) {
      const Matrix qv = haar_orthogonal(dv, rng);
      const int vfirst = db > 0 ? zb.first : m;
      out.v.middleCols(vfirst, dv) = svd.v.middleCols(vfirst, dv) * qv;
    }
  }
  return out;
}

}  // namespace kyfan
