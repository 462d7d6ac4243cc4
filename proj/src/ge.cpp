/// @file ge.cpp
/// @brief Solution-pair validation, index taxonomy, lineality space, strict
///        complementarity, and nondegeneracy.

#include "kyfan/ge.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "kyfan/norms.hpp"
#include "kyfan/spectral.hpp"
#include "kyfan/tolerances.hpp"

namespace kyfan {

namespace {

[[noreturn]] void condition_violation(const std::string& name,
                                      double residual, double threshold) {
  std::ostringstream os;
  os << "condition violated: " << name << " (residual " << residual
     << " > threshold " << threshold << ")";
  throw KyfanError("CONDITION_VIOLATION", os.str());
}

double block_mean(const Vector& v, const IndexBlock& b) {
  return v.segment(b.first, b.size()).mean();
}

double block_spread(const Vector& v, const IndexBlock& b) {
  const auto seg = v.segment(b.first, b.size());
  return seg.maxCoeff() - seg.minCoeff();
}

}  // namespace

Matrix GeAnalysis::orient(const Matrix& h) const {
  if (h.rows() != x_bar.rows() || h.cols() != x_bar.cols()) {
    throw KyfanError("INPUT_ERROR",
                     "direction shape does not match the solution pair");
  }
  if (!h.allFinite()) {
    throw KyfanError("INPUT_ERROR", "direction has non-finite entries");
  }
  return transposed() ? Matrix(h.transpose()) : h;
}

OrderedSvd GeAnalysis::xbar_svd() const {
  return svd_from_factors(svd.u, svd.v, sigma_bar, group_tol, svd.transposed);
}

OrderedSvd GeAnalysis::sbar_svd() const {
  return svd_from_factors(svd.u, svd.v, u_bar, group_tol, svd.transposed);
}

namespace {

Matrix diag_pinv(const OrderedSvd& svd, const Vector& d) {
  Matrix p = Matrix::Zero(svd.n(), svd.m());
  for (int i = 0; i < svd.m(); ++i) {
    if (d(i) > 0) p.row(i).noalias() = svd.u.col(i).transpose() / d(i);
  }
  return svd.v.leftCols(svd.m()) * p.topRows(svd.m());
}

}  // namespace

Matrix GeAnalysis::xbar_pinv() const { return diag_pinv(svd, sigma_bar); }
Matrix GeAnalysis::sbar_pinv() const { return diag_pinv(svd, u_bar); }

DualityCheck check_subgradient_duality(const Matrix& x_bar,
                                       const Matrix& s_bar, int k,
                                       double tol) {
  if (x_bar.rows() != s_bar.rows() || x_bar.cols() != s_bar.cols()) {
    throw KyfanError("INPUT_ERROR", "X_bar and S_bar shapes differ");
  }
  DualityCheck out;
  out.theta_x = kyfan_norm(x_bar, k);
  out.dual_norm = dual_kyfan_norm(s_bar, k);
  out.dual_norm_residual = std::max(0.0, out.dual_norm - 1.0);
  const double pairing = (s_bar.array() * x_bar.array()).sum();
  out.pairing_residual =
      std::abs(pairing - out.theta_x) / std::max(1.0, out.theta_x);
  out.ok = out.dual_norm_residual <= tol && out.pairing_residual <= tol;
  return out;
}

GeAnalysis analyze_ge(const Matrix& x_bar, const Matrix& s_bar, int k,
                      double tol, double tol_class, double group_tol) {
  const DualityCheck dc = check_subgradient_duality(x_bar, s_bar, k, tol);
  if (!dc.ok) {
    std::ostringstream os;
    os << "S_bar is not a subgradient at X_bar: dual-norm residual "
       << dc.dual_norm_residual << ", pairing residual " << dc.pairing_residual;
    throw KyfanError("SUBGRADIENT_DUALITY_VIOLATION", os.str());
  }

  GeAnalysis an;
  an.x_bar = x_bar;
  an.s_bar = s_bar;
  an.k = k;
  const Matrix x = x_bar + s_bar;
  an.svd = ordered_svd(x, group_tol);
  const int m = an.svd.m();
  const int n = an.svd.n();
  if (k < 1 || k > m) {
    throw KyfanError("PARAMETER_ERROR", "k must satisfy 1 <= k <= min(rows, cols)");
  }
  an.x_bar_i = an.transposed() ? Matrix(x_bar.transpose()) : x_bar;
  an.s_bar_i = an.transposed() ? Matrix(s_bar.transpose()) : s_bar;
  an.sigma1_x = an.svd.sigma(0);
  an.tol = tol;
  an.tol_class = tol_class;
  an.group_tol = an.svd.group_tol;

  const double scale = std::max(1.0, an.sigma1_x);
  const double tolv = tol * scale;
  const double band = tol_class * scale;

  // Simultaneous diagonalization: both X_bar and S_bar must be diagonal in
  // the singular basis of X (gauge-safe because on every equal-sigma block
  // the diagonal parts are multiples of the identity).
  const Matrix dx = an.svd.u.transpose() * an.x_bar_i * an.svd.v;
  const Matrix ds = an.svd.u.transpose() * an.s_bar_i * an.svd.v;
  Vector raw_sb(m), raw_ub(m);
  double off = 0.0;
  for (int i = 0; i < m; ++i) {
    raw_sb(i) = dx(i, i);
    raw_ub(i) = ds(i, i);
  }
  {
    Matrix ox = dx, os = ds;
    for (int i = 0; i < m; ++i) {
      ox(i, i) = 0.0;
      os(i, i) = 0.0;
    }
    off = std::max(ox.cwiseAbs().maxCoeff(), os.cwiseAbs().maxCoeff());
  }
  if (off > tolv) {
    std::ostringstream o;
    o << "X_bar and S_bar do not admit a simultaneous ordered SVD "
         "(off-diagonal residual "
      << off << ")";
    throw KyfanError("SIMULTANEOUS_SVD_VIOLATION", o.str());
  }

  // Value-level conditions on the extracted spectra.
  for (int i = 0; i < m; ++i) {
    if (raw_sb(i) < -tolv) condition_violation("sigma_bar>=0", -raw_sb(i), tolv);
    if (raw_ub(i) < -tolv) condition_violation("u_bar>=0", -raw_ub(i), tolv);
    const double split = std::abs(raw_sb(i) + raw_ub(i) - an.svd.sigma(i));
    if (split > tolv) condition_violation("sigma_bar+u_bar=sigma", split, tolv);
    if (i + 1 < m) {
      if (raw_sb(i + 1) - raw_sb(i) > tolv)
        condition_violation("sigma_bar non-increasing",
                            raw_sb(i + 1) - raw_sb(i), tolv);
      if (raw_ub(i + 1) - raw_ub(i) > tolv)
        condition_violation("u_bar non-increasing", raw_ub(i + 1) - raw_ub(i),
                            tolv);
    }
    raw_sb(i) = std::max(raw_sb(i), 0.0);
    raw_ub(i) = std::max(raw_ub(i), 0.0);
  }

  an.case_tag = raw_sb(k - 1) > band ? CaseTag::POSITIVE_SIGMA_K
                                     : CaseTag::ZERO_SIGMA_K;
  const bool positive = an.case_tag == CaseTag::POSITIVE_SIGMA_K;

  // Collect all equal-sigma blocks of X in order (zero block last).
  std::vector<IndexBlock> all_blocks = an.svd.groups.blocks;
  const bool has_zero_block = !an.svd.groups.zero_block.empty();
  if (has_zero_block) all_blocks.push_back(an.svd.groups.zero_block);

  // Region assignment per block, driven by the block means of sigma_bar.
  const double sigma_k_raw = raw_sb(k - 1);
  std::vector<Region> regions(all_blocks.size(), Region::GAMMA);
  for (std::size_t bi = 0; bi < all_blocks.size(); ++bi) {
    const IndexBlock& b = all_blocks[bi];
    const double spread =
        std::max(block_spread(raw_sb, b), block_spread(raw_ub, b));
    if (spread > band)
      condition_violation("sigma_bar/u_bar constant on equal-sigma blocks",
                          spread, band);
    const double msb = block_mean(raw_sb, b);
    if (positive) {
      if (msb > sigma_k_raw + band)
        regions[bi] = Region::ALPHA;
      else if (msb >= sigma_k_raw - band)
        regions[bi] = Region::BETA2;  // refined below
      else
        regions[bi] = Region::GAMMA;
    } else {
      regions[bi] = msb > band ? Region::ALPHA : Region::BETA2;
    }
  }

  // alpha must be an initial run of blocks, gamma a final run.
  {
    int state = 0;  // 0 = alpha, 1 = beta, 2 = gamma
    for (std::size_t bi = 0; bi < all_blocks.size(); ++bi) {
      const int want = regions[bi] == Region::ALPHA
                           ? 0
                           : (regions[bi] == Region::GAMMA ? 2 : 1);
      if (want < state)
        throw KyfanError("DEGENERATE_CLASSIFICATION",
                         "sigma_bar block means are not monotone across the "
                         "alpha/beta/gamma split");
      state = want;
    }
  }

  an.k0 = 0;
  an.k1 = 0;
  for (std::size_t bi = 0; bi < all_blocks.size(); ++bi) {
    if (regions[bi] == Region::ALPHA) an.k0 += all_blocks[bi].size();
    if (regions[bi] != Region::GAMMA) an.k1 += all_blocks[bi].size();
  }
  if (!positive) an.k1 = m;
  if (an.k0 >= k || an.k1 < k) {
    throw KyfanError("DEGENERATE_CLASSIFICATION",
                     "index k is not bracketed by the beta region; sigma_bar "
                     "values straddle the classification band");
  }

  // u_bar value conditions per region.
  const double sum_tol = tolv * std::max(1.0, static_cast<double>(m));
  double beta_sum = 0.0;
  for (std::size_t bi = 0; bi < all_blocks.size(); ++bi) {
    const IndexBlock& b = all_blocks[bi];
    for (int i = b.first; i <= b.last; ++i) {
      switch (regions[bi]) {
        case Region::ALPHA:
          if (std::abs(raw_ub(i) - 1.0) > tolv)
            condition_violation("u_alpha=1", std::abs(raw_ub(i) - 1.0), tolv);
          break;
        case Region::GAMMA:
          if (raw_ub(i) > tolv)
            condition_violation("u_gamma=0", raw_ub(i), tolv);
          break;
        default:
          if (raw_ub(i) > 1.0 + tolv)
            condition_violation("u_beta<=1", raw_ub(i) - 1.0, tolv);
          beta_sum += raw_ub(i);
          break;
      }
    }
  }
  const double kk0 = static_cast<double>(k - an.k0);
  if (positive) {
    if (std::abs(beta_sum - kk0) > sum_tol)
      condition_violation("sum(u_beta)=k-k0", std::abs(beta_sum - kk0),
                          sum_tol);
  } else {
    if (beta_sum > kk0 + sum_tol)
      condition_violation("sum(u_beta)<=k-k0", beta_sum - kk0, sum_tol);
  }

  // Refine beta into beta1 / beta2 / beta3 by the block means of u_bar.
  int n_beta1 = 0, n_beta2 = 0, n_beta3 = 0;
  for (std::size_t bi = 0; bi < all_blocks.size(); ++bi) {
    if (regions[bi] == Region::ALPHA || regions[bi] == Region::GAMMA) continue;
    const double mu = block_mean(raw_ub, all_blocks[bi]);
    if (mu >= 1.0 - tol_class) {
      regions[bi] = Region::BETA1;
      ++n_beta1;
    } else if (mu <= tol_class) {
      regions[bi] = Region::BETA3;
      ++n_beta3;
    } else {
      regions[bi] = Region::BETA2;
      ++n_beta2;
    }
  }
  {
    // Sub-regions must appear in the order beta1, beta2, beta3.
    int state = 0;
    for (std::size_t bi = 0; bi < all_blocks.size(); ++bi) {
      int want = -1;
      if (regions[bi] == Region::BETA1) want = 0;
      if (regions[bi] == Region::BETA2) want = 1;
      if (regions[bi] == Region::BETA3) want = 2;
      if (want < 0) continue;
      if (want < state)
        throw KyfanError("DEGENERATE_CLASSIFICATION",
                         "u_bar block means are not monotone across the "
                         "beta1/beta2/beta3 split");
      state = std::max(state, want);
    }
  }
  if (positive && (n_beta1 > 1 || n_beta3 > 1)) {
    throw KyfanError("DEGENERATE_CLASSIFICATION",
                     "multiple equal-sigma blocks classify as beta1 or beta3 "
                     "in the positive case");
  }
  if (!positive) {
    // With sigma_bar = 0 on beta, u_bar equals sigma there, so exact zeros
    // of u_bar occur precisely on the zero block of X.
    for (std::size_t bi = 0; bi < all_blocks.size(); ++bi) {
      const bool zb = has_zero_block && bi + 1 == all_blocks.size();
      if (regions[bi] == Region::BETA3 && !zb)
        throw KyfanError("DEGENERATE_CLASSIFICATION",
                         "u_bar vanishes on a block with positive sigma; the "
                         "pair sits between classification cases");
      if (zb && regions[bi] != Region::BETA3)
        throw KyfanError("DEGENERATE_CLASSIFICATION",
                         "zero block of X carries nonzero u_bar");
    }
  }

  // Snapped common value of sigma_bar on beta.
  double sk = 0.0;
  if (positive) {
    double acc = 0.0;
    int cnt = 0;
    for (std::size_t bi = 0; bi < all_blocks.size(); ++bi) {
      if (regions[bi] == Region::ALPHA || regions[bi] == Region::GAMMA)
        continue;
      acc += raw_sb.segment(all_blocks[bi].first, all_blocks[bi].size()).sum();
      cnt += all_blocks[bi].size();
    }
    sk = acc / cnt;
  }
  an.sigma_k_bar = sk;

  // Populate the block table and the snapped spectra.
  an.sigma_bar = Vector::Zero(m);
  an.u_bar = Vector::Zero(m);
  an.blocks.clear();
  an.r0 = an.r_tilde0 = an.r_tilde1 = an.r1 = 0;
  for (std::size_t bi = 0; bi < all_blocks.size(); ++bi) {
    BlockInfo info;
    info.idx = all_blocks[bi];
    info.region = regions[bi];
    info.is_zero_block = has_zero_block && bi + 1 == all_blocks.size();
    switch (regions[bi]) {
      case Region::ALPHA:
        info.nu_bar = block_mean(raw_sb, info.idx);
        info.mu_bar = 1.0;
        ++an.r0;
        break;
      case Region::BETA1:
        info.nu_bar = sk;
        info.mu_bar = 1.0;
        break;
      case Region::BETA2:
        info.nu_bar = sk;
        info.mu_bar = block_mean(raw_ub, info.idx);
        break;
      case Region::BETA3:
        info.nu_bar = sk;
        info.mu_bar = 0.0;
        break;
      case Region::GAMMA:
        info.nu_bar = info.is_zero_block ? 0.0 : block_mean(raw_sb, info.idx);
        info.mu_bar = 0.0;
        break;
    }
    if (std::abs(info.nu_bar) <= band) info.nu_bar = 0.0;
    for (int i = info.idx.first; i <= info.idx.last; ++i) {
      an.sigma_bar(i) = info.nu_bar;
      an.u_bar(i) = info.mu_bar;
      switch (regions[bi]) {
        case Region::ALPHA: an.alpha.push_back(i); break;
        case Region::BETA1: an.beta1.push_back(i); break;
        case Region::BETA2: an.beta2.push_back(i); break;
        case Region::BETA3: an.beta3.push_back(i); break;
        case Region::GAMMA: an.gamma.push_back(i); break;
      }
      if (regions[bi] != Region::ALPHA && regions[bi] != Region::GAMMA)
        an.beta.push_back(i);
    }
    an.blocks.push_back(info);
  }
  an.r_tilde0 = an.r0 + n_beta1;
  an.r_tilde1 = an.r_tilde0 + n_beta2;
  an.r1 = an.r_tilde1 + n_beta3;

  // Multiplier norms and the predicates the cone module keys on.
  an.nuclear_norm_s = raw_ub.sum();
  an.dual_norm_s =
      std::max(raw_ub(0), an.nuclear_norm_s / static_cast<double>(k));
  an.nuclear_eq_k = std::abs(an.nuclear_norm_s - static_cast<double>(k)) <=
                    tol_class * static_cast<double>(k);
  an.dual_norm_lt_1 = an.dual_norm_s < 1.0 - tol_class;
  return an;
}

StrictCompResult check_strict_complementarity(const GeAnalysis& an,
                                              double tol) {
  StrictCompResult out;
  double margin = std::numeric_limits<double>::infinity();
  if (an.case_tag == CaseTag::POSITIVE_SIGMA_K) {
    for (int i : an.beta) {
      margin = std::min(margin, an.u_bar(i));
      margin = std::min(margin, 1.0 - an.u_bar(i));
    }
  } else {
    double sum = 0.0;
    for (int i : an.beta) {
      margin = std::min(margin, 1.0 - an.u_bar(i));
      sum += an.u_bar(i);
    }
    margin = std::min(margin, static_cast<double>(an.k - an.k0) - sum);
  }
  out.margin = margin;
  out.strict = margin > tol;
  return out;
}

std::vector<Matrix> tlin_basis(const GeAnalysis& an) {
  const int m = an.m();
  const int n = an.n();
  std::vector<bool> in_beta(m, false);
  for (int i : an.beta) in_beta[i] = true;

  // Build patterns in the coordinates P = U^T H V, then map back through the
  // fixed factors; images of orthonormal patterns stay orthonormal.
  std::vector<Matrix> patterns;
  const bool positive = an.case_tag == CaseTag::POSITIVE_SIGMA_K;
  auto constrained = [&](int i, int j) {
    if (!in_beta[i]) return false;
    if (positive) return j < m && in_beta[j];
    return j >= m || in_beta[j];
  };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (constrained(i, j)) continue;
      Matrix e = Matrix::Zero(m, n);
      e(i, j) = 1.0;
      patterns.push_back(std::move(e));
    }
  }
  if (positive) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t a = 0; a < an.beta.size(); ++a) {
      for (std::size_t b = a + 1; b < an.beta.size(); ++b) {
        Matrix e = Matrix::Zero(m, n);
        e(an.beta[a], an.beta[b]) = inv_sqrt2;
        e(an.beta[b], an.beta[a]) = -inv_sqrt2;
        patterns.push_back(std::move(e));
      }
    }
    Matrix e = Matrix::Zero(m, n);
    const double val = 1.0 / std::sqrt(static_cast<double>(an.beta.size()));
    for (int i : an.beta) e(i, i) = val;
    patterns.push_back(std::move(e));
  }

  std::vector<Matrix> basis;
  basis.reserve(patterns.size());
  for (const Matrix& p : patterns) {
    basis.push_back(an.svd.u * p * an.svd.v.transpose());
  }
  return basis;
}

bool check_nondegeneracy(const GeAnalysis& an, const LinearMapRange& range,
                         double tol) {
  const int m = an.m();
  const int n = an.n();
  const std::vector<Matrix> tl = tlin_basis(an);

  std::vector<Matrix> cols;
  cols.reserve(tl.size() + range.basis.size());
  for (const Matrix& b : tl) cols.push_back(b);
  for (const Matrix& b : range.basis) {
    Matrix bi = an.orient(b);
    const double norm = bi.norm();
    if (norm <= tol) continue;  // ignore numerically zero basis elements
    cols.push_back(bi / norm);
  }
  if (static_cast<int>(cols.size()) < m * n) return false;

  Matrix stacked(m * n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    stacked.col(static_cast<Eigen::Index>(j)) =
        Eigen::Map<const Vector>(cols[j].data(), m * n);
  }
  Eigen::JacobiSVD<Matrix> svd(stacked);
  const Vector& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol) ++rank;
  return rank == m * n;
}

}  // namespace kyfan
