/// @file derivatives.cpp
/// @brief First- and second-order directional derivatives of singular values
///        and of the Ky Fan k-norm.

#include "kyfan/derivatives.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <vector>

#include "kyfan/tolerances.hpp"

namespace kyfan {

namespace {

Matrix orient_dir(const OrderedSvd& svd, const Matrix& h, const char* what) {
  const int rows = svd.transposed ? svd.n() : svd.m();
  const int cols = svd.transposed ? svd.m() : svd.n();
  if (h.rows() != rows || h.cols() != cols) {
    throw KyfanError("INPUT_ERROR",
                     std::string(what) + " shape does not match the matrix");
  }
  if (!h.allFinite()) {
    throw KyfanError("INPUT_ERROR",
                     std::string(what) + " has non-finite entries");
  }
  return svd.transposed ? Matrix(h.transpose()) : h;
}

Matrix sym(const Matrix& a) { return 0.5 * (a + a.transpose()); }

/// Eigenvalues (descending) and matching eigenvectors of a symmetric matrix.
void eig_descending(const Matrix& a, Vector& vals, Matrix& vecs) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  if (es.info() != Eigen::Success) {
    throw KyfanError("DECOMPOSITION_FAILURE", "eigendecomposition failed");
  }
  const Eigen::Index d = a.rows();
  vals.resize(d);
  vecs.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    vals(i) = es.eigenvalues()(d - 1 - i);
    vecs.col(i) = es.eigenvectors().col(d - 1 - i);
  }
}

Vector eig_descending_values(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw KyfanError("DECOMPOSITION_FAILURE", "eigendecomposition failed");
  }
  return es.eigenvalues().reverse();
}

/// Adjacent-gap clustering of a non-increasing vector: a new cluster starts
/// whenever the gap exceeds tol (the same rule used for sigma blocks).
std::vector<IndexBlock> cluster_descending(const Vector& vals, double tol) {
  std::vector<IndexBlock> out;
  const int d = static_cast<int>(vals.size());
  int start = 0;
  for (int i = 1; i <= d; ++i) {
    if (i == d || vals(i - 1) - vals(i) > tol) {
      out.push_back(IndexBlock{start, i - 1});
      start = i;
    }
  }
  return out;
}

void check_k(int k, int m) {
  if (k < 1 || k > m) {
    throw KyfanError("PARAMETER_ERROR",
                     "k must satisfy 1 <= k <= min(rows, cols)");
  }
}

}  // namespace

Vector sigma_dd1(const OrderedSvd& svd, const Matrix& h) {
  const Matrix hi = orient_dir(svd, h, "direction H");
  const int m = svd.m();
  const int n = svd.n();
  const Matrix p = svd.u.transpose() * hi * svd.v;

  Vector out = Vector::Zero(m);
  for (const IndexBlock& g : svd.groups.blocks) {
    const int d = g.size();
    const Vector vals = eig_descending_values(sym(p.block(g.first, g.first, d, d)));
    for (int i = 0; i < d; ++i) out(g.first + i) = vals(i);
  }
  const IndexBlock& b = svd.groups.zero_block;
  if (!b.empty()) {
    const int d = b.size();
    Matrix big(d, d + n - m);
    big.leftCols(d) = p.block(b.first, b.first, d, d);
    if (n > m) big.rightCols(n - m) = p.block(b.first, m, d, n - m);
    Eigen::JacobiSVD<Matrix> bs(big);
    for (int i = 0; i < d; ++i) out(b.first + i) = bs.singularValues()(i);
  }
  return out;
}

double theta_dd1(const OrderedSvd& svd, const Matrix& h, int k) {
  check_k(k, svd.m());
  return sigma_dd1(svd, h).head(k).sum();
}

OmegaMatrix omega_matrix(const OrderedSvd& svd, const Matrix& h,
                         const std::vector<int>& block, double nu) {
  if (!(nu > 0.0)) {
    throw KyfanError("PARAMETER_ERROR", "Omega requires a positive block value nu");
  }
  const int m = svd.m();
  const int n = svd.n();
  for (int i : block) {
    if (i < 0 || i >= m) {
      throw KyfanError("INPUT_ERROR", "Omega block index out of range");
    }
  }
  const Matrix hi = orient_dir(svd, h, "direction H");
  const Matrix p1 = svd.u.transpose() * hi * svd.v1();
  const Matrix s1 = sym(p1);
  const Matrix t1 = 0.5 * (p1 - p1.transpose());

  Vector d1(m), d2(m);
  for (int j = 0; j < m; ++j) {
    const double gap = svd.sigma(j) - nu;
    d1(j) = std::abs(gap) <= svd.group_tol ? 0.0 : 1.0 / gap;
    d2(j) = -1.0 / (svd.sigma(j) + nu);
  }

  const int nb = static_cast<int>(block.size());
  Matrix sc(m, nb), tc(m, nb);
  for (int j = 0; j < nb; ++j) {
    sc.col(j) = s1.col(block[j]);
    tc.col(j) = t1.col(block[j]);
  }
  Matrix omega = sc.transpose() * d1.asDiagonal() * sc +
                 tc.transpose() * d2.asDiagonal() * tc;
  if (n > m) {
    const Matrix h2 = svd.u.transpose() * hi * svd.v2();
    Matrix rows(nb, n - m);
    for (int j = 0; j < nb; ++j) rows.row(j) = h2.row(block[j]);
    omega.noalias() -= (0.5 / nu) * rows * rows.transpose();
  }
  OmegaMatrix out;
  out.block = block;
  out.value = sym(omega);
  return out;
}

Vector sigma_dd2(const OrderedSvd& svd, const Matrix& h, const Matrix& w,
                 double group_tol) {
  const double gt = group_tol >= 0 ? group_tol : svd.group_tol;
  const Matrix hi = orient_dir(svd, h, "direction H");
  const Matrix wi = orient_dir(svd, w, "direction W");
  const int m = svd.m();
  const int n = svd.n();
  const Matrix ph = svd.u.transpose() * hi * svd.v;
  const Matrix pw = svd.u.transpose() * wi * svd.v;

  Vector out = Vector::Zero(m);

  // Positive blocks: eigenvalues of the compressed W-part corrected by the
  // Omega curvature term, refined over the eigenvalue clusters of the
  // first-order compression.
  for (const IndexBlock& g : svd.groups.blocks) {
    const int d = g.size();
    const double nu = svd.sigma.segment(g.first, d).mean();
    Vector lam;
    Matrix r;
    eig_descending(sym(ph.block(g.first, g.first, d, d)), lam, r);

    std::vector<int> gidx(d);
    for (int i = 0; i < d; ++i) gidx[i] = g.first + i;
    const Matrix mcore =
        sym(pw.block(g.first, g.first, d, d)) -
        2.0 * omega_matrix(svd, h, gidx, nu).value;

    for (const IndexBlock& cl : cluster_descending(lam, gt)) {
      const int dc = cl.size();
      const Matrix rsub = r.middleCols(cl.first, dc);
      const Vector vals = eig_descending_values(sym(rsub.transpose() * mcore * rsub));
      for (int i = 0; i < dc; ++i) out(g.first + cl.first + i) = vals(i);
    }
  }

  // Zero block: split by the inner singular values of the compressed H-part.
  const IndexBlock& b = svd.groups.zero_block;
  if (!b.empty()) {
    const int d = b.size();
    const int bn = d + n - m;
    Matrix big(d, bn);
    big.leftCols(d) = ph.block(b.first, b.first, d, d);
    if (n > m) big.rightCols(n - m) = ph.block(b.first, m, d, n - m);
    Eigen::JacobiSVD<Matrix> bs(big, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Matrix e = bs.matrixU();   // d x d
    const Matrix f = bs.matrixV();   // bn x bn
    const Vector st = bs.singularValues();

    // Z = W - 2 H X^+ H with the pseudoinverse of X zeroing the zero block.
    Vector pinv_diag(m);
    for (int i = 0; i < m; ++i)
      pinv_diag(i) = svd.sigma(i) > gt ? 1.0 / svd.sigma(i) : 0.0;
    const Matrix xpinv =
        svd.v1() * pinv_diag.asDiagonal() * svd.u.transpose();
    const Matrix z = wi - 2.0 * hi * xpinv * hi;
    const Matrix pz = svd.u.transpose() * z * svd.v;
    Matrix gmat(d, bn);
    gmat.leftCols(d) = pz.block(b.first, b.first, d, d);
    if (n > m) gmat.rightCols(n - m) = pz.block(b.first, m, d, n - m);

    const std::vector<IndexBlock> clusters = cluster_descending(st, gt);
    for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
      const IndexBlock& cl = clusters[ci];
      const int dc = cl.size();
      const bool zero_cluster =
          ci + 1 == clusters.size() && st(cl.last) <= gt;
      const Matrix esub = e.middleCols(cl.first, dc);
      if (!zero_cluster) {
        const Matrix fsub = f.middleCols(cl.first, dc);
        const Vector vals =
            eig_descending_values(sym(esub.transpose() * gmat * fsub));
        for (int i = 0; i < dc; ++i) out(b.first + cl.first + i) = vals(i);
      } else {
        Matrix fcat(bn, dc + n - m);
        fcat.leftCols(dc) = f.middleCols(cl.first, dc);
        if (n > m) fcat.rightCols(n - m) = f.middleCols(d, n - m);
        Eigen::JacobiSVD<Matrix> gs(esub.transpose() * gmat * fcat);
        for (int i = 0; i < dc; ++i)
          out(b.first + cl.first + i) = gs.singularValues()(i);
      }
    }
  }
  return out;
}

double theta_dd2(const OrderedSvd& svd, const Matrix& h, const Matrix& w,
                 int k) {
  check_k(k, svd.m());
  return sigma_dd2(svd, h, w).head(k).sum();
}

}  // namespace kyfan
