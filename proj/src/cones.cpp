/// @file cones.cpp
/// @brief Tangent cone, lineality spaces, critical cones, and affine hulls.

#include "kyfan/cones.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kyfan/derivatives.hpp"
#include "kyfan/tolerances.hpp"

namespace kyfan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix pick(const Matrix& p, const std::vector<int>& rows,
            const std::vector<int>& cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(i, j) = p(rows[i], cols[j]);
  return out;
}

std::vector<int> cat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<int> c_columns(const GeAnalysis& an) {
  std::vector<int> out;
  for (int j = an.m(); j < an.n(); ++j) out.push_back(j);
  return out;
}

Matrix sym(const Matrix& a) { return 0.5 * (a + a.transpose()); }

double lambda_min(const Matrix& sym_a) {
  if (sym_a.rows() == 0) return kInf;
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym_a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double lambda_max(const Matrix& sym_a) {
  if (sym_a.rows() == 0) return -kInf;
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym_a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double sigma_max(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

Vector singular_values(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues();
}

/// Local (0-based, within a compartment list) positions of `sub` inside
/// `all`; `all` must contain `sub` as a subsequence of its sorted entries.
std::vector<int> local_positions(const std::vector<int>& all,
                                 const std::vector<int>& sub) {
  std::vector<int> out;
  for (int v : sub) {
    const auto it = std::find(all.begin(), all.end(), v);
    out.push_back(static_cast<int>(it - all.begin()));
  }
  return out;
}

void add(ConeReport& rep, const std::string& name, double residual,
         double threshold) {
  rep.conditions.push_back(ConeCondition{name, residual, threshold});
}

void finalize(ConeReport& rep) {
  rep.member = true;
  for (const ConeCondition& c : rep.conditions) {
    if (!(c.residual <= c.threshold)) rep.member = false;
  }
}

/// Frobenius norm of everything in `a` outside the listed square diagonal
/// compartments (given by local row/col position lists).
double offdiag_residual(const Matrix& a,
                        const std::vector<std::vector<int>>& keep_rows,
                        const std::vector<std::vector<int>>& keep_cols) {
  Matrix r = a;
  for (std::size_t g = 0; g < keep_rows.size(); ++g) {
    for (int i : keep_rows[g])
      for (int j : keep_cols[g]) r(i, j) = 0.0;
  }
  return r.norm();
}

}  // namespace

double theta_dd1_taxonomy(const GeAnalysis& an, const Matrix& h) {
  const Matrix hi = an.orient(h);
  const Matrix p = an.svd.u.transpose() * hi * an.svd.v;
  double val = 0.0;
  for (int i : an.alpha) val += p(i, i);
  const int take = an.k - an.k0;
  if (take <= 0) return val;
  if (an.case_tag == CaseTag::POSITIVE_SIGMA_K) {
    const Vector lam =
        Eigen::SelfAdjointEigenSolver<Matrix>(
            sym(pick(p, an.beta, an.beta)), Eigen::EigenvaluesOnly)
            .eigenvalues();
    for (int i = 0; i < take; ++i) val += lam(lam.size() - 1 - i);
  } else {
    const Vector sv =
        singular_values(pick(p, an.beta, cat(an.beta, c_columns(an))));
    for (int i = 0; i < take; ++i) val += sv(i);
  }
  return val;
}

ConeReport tangent_cone_contains(const GeAnalysis& an, const Matrix& h,
                                 double tau, double tol) {
  ConeReport rep;
  rep.route = "directional-derivative";
  const double thr = tol * std::max(1.0, h.norm());
  const double dd1 = theta_dd1_taxonomy(an, h);
  add(rep, "theta_dd1<=tau", dd1 - tau, thr);
  finalize(rep);
  return rep;
}

ConeReport lineality_primal_contains(const GeAnalysis& an, const Matrix& h,
                                     double tol) {
  ConeReport rep;
  rep.route = "structural+definitional";
  const Matrix hi = an.orient(h);
  const double thr = tol * std::max(1.0, hi.norm());
  const Matrix p = an.svd.u.transpose() * hi * an.svd.v;

  if (an.case_tag == CaseTag::POSITIVE_SIGMA_K) {
    const Matrix mb = sym(pick(p, an.beta, an.beta));
    const double tau_hat = mb.trace() / static_cast<double>(mb.rows());
    const Matrix dev =
        mb - tau_hat * Matrix::Identity(mb.rows(), mb.cols());
    add(rep, "S(H_beta_beta)=tau*I", dev.norm(), thr);
  } else {
    const Matrix nb = pick(p, an.beta, cat(an.beta, c_columns(an)));
    add(rep, "H[beta,beta+c]=0", nb.norm(), thr);
  }
  const double two_sided =
      theta_dd1_taxonomy(an, h) + theta_dd1_taxonomy(an, -h);
  add(rep, "theta_dd1(H)+theta_dd1(-H)=0", std::abs(two_sided), thr);
  finalize(rep);
  return rep;
}

ConeReport lineality_dual_contains(const GeAnalysis& an, const Matrix& h,
                                   double tol) {
  ConeReport rep;
  if (an.dual_norm_lt_1) {
    rep.route = "interior";
    add(rep, "dual_norm(S_bar)<1", an.dual_norm_s, 1.0 - an.tol_class);
    finalize(rep);
    return rep;
  }
  rep.route = "structural";
  const Matrix hi = an.orient(h);
  const double thr = tol * std::max(1.0, hi.norm());
  const Matrix p = an.svd.u.transpose() * hi * an.svd.v;

  const std::vector<int> ab1 = cat(an.alpha, an.beta1);
  add(rep, "S(H[alpha+beta1,alpha+beta1])=0",
      sym(pick(p, ab1, ab1)).norm(), thr);
  if (an.nuclear_eq_k) {
    double tr2 = 0.0;
    for (int i : an.beta2) tr2 += p(i, i);
    add(rep, "tr(H[beta2,beta2])=0", std::abs(tr2), thr);
    const std::vector<int> bg = cat(an.beta3, an.gamma);
    add(rep, "H[beta3+gamma,beta3+gamma+c]=0",
        pick(p, bg, cat(bg, c_columns(an))).norm(), thr);
  }
  finalize(rep);
  return rep;
}

ConeReport critical_cone_primal_direct(const GeAnalysis& an, const Matrix& h,
                                       double tol) {
  ConeReport rep;
  rep.route = "direct";
  const double thr = tol * std::max(1.0, h.norm());
  const double dd1 = theta_dd1_taxonomy(an, h);
  const double pairing = (an.s_bar.array() * h.array()).sum();
  add(rep, "theta_dd1(H)=<S_bar,H>", std::abs(dd1 - pairing), thr);
  finalize(rep);
  return rep;
}

ConeReport critical_cone_primal_structural(const GeAnalysis& an,
                                           const Matrix& h, double tol) {
  ConeReport rep;
  rep.route = "structural";
  const Matrix hi = an.orient(h);
  const double thr = tol * std::max(1.0, hi.norm());
  const Matrix p = an.svd.u.transpose() * hi * an.svd.v;

  if (an.case_tag == CaseTag::POSITIVE_SIGMA_K) {
    const Matrix mb = sym(pick(p, an.beta, an.beta));
    const std::vector<int> l1 = local_positions(an.beta, an.beta1);
    const std::vector<int> l2 = local_positions(an.beta, an.beta2);
    const std::vector<int> l3 = local_positions(an.beta, an.beta3);
    add(rep, "S(H_beta) off-compartments=0",
        offdiag_residual(mb, {l1, l2, l3}, {l1, l2, l3}), thr);
    const double lmin1 = lambda_min(pick(mb, l1, l1));
    const double lmax3 = lambda_max(pick(mb, l3, l3));
    if (!l2.empty()) {
      const Matrix m2 = pick(mb, l2, l2);
      const double tau_hat = m2.trace() / static_cast<double>(l2.size());
      add(rep, "S(H_beta2)=tau*I",
          (m2 - tau_hat * Matrix::Identity(l2.size(), l2.size())).norm(), thr);
      if (!l1.empty())
        add(rep, "lambda_min(S_beta1)>=tau", std::max(0.0, tau_hat - lmin1),
            thr);
      if (!l3.empty())
        add(rep, "tau>=lambda_max(S_beta3)", std::max(0.0, lmax3 - tau_hat),
            thr);
    } else if (!l1.empty() && !l3.empty()) {
      add(rep, "lambda_min(S_beta1)>=lambda_max(S_beta3)",
          std::max(0.0, lmax3 - lmin1), thr);
    }
  } else {
    const std::vector<int> bc = cat(an.beta, c_columns(an));
    const Matrix nb = pick(p, an.beta, bc);
    const std::vector<int> r1 = local_positions(an.beta, an.beta1);
    const std::vector<int> r2 = local_positions(an.beta, an.beta2);
    const std::vector<int> r3 = local_positions(an.beta, an.beta3);
    const std::vector<int> c1 = local_positions(bc, an.beta1);
    const std::vector<int> c2 = local_positions(bc, an.beta2);
    std::vector<int> c3c = local_positions(bc, an.beta3);
    for (std::size_t j = an.beta.size(); j < bc.size(); ++j)
      c3c.push_back(static_cast<int>(j));

    if (!r1.empty()) {
      const Matrix n11 = pick(nb, r1, c1);
      add(rep, "H_beta1_beta1 symmetric", (n11 - n11.transpose()).norm(), thr);
    }
    if (an.nuclear_eq_k) {
      add(rep, "H[beta,beta+c] off-compartments=0",
          offdiag_residual(nb, {r1, r2, r3}, {c1, c2, c3c}), thr);
      const double lmin1 = lambda_min(sym(pick(nb, r1, c1)));
      const double smax3 = sigma_max(pick(nb, r3, c3c));
      if (!r2.empty()) {
        const Matrix n22 = pick(nb, r2, c2);
        const double tau_hat = n22.trace() / static_cast<double>(r2.size());
        add(rep, "H_beta2_beta2=tau*I",
            (n22 - tau_hat * Matrix::Identity(r2.size(), r2.size())).norm(),
            thr);
        add(rep, "tau>=0", std::max(0.0, -tau_hat), thr);
        if (!r1.empty())
          add(rep, "lambda_min(S_beta1)>=tau", std::max(0.0, tau_hat - lmin1),
              thr);
        add(rep, "tau>=sigma_max(H[b,b+c])", std::max(0.0, smax3 - tau_hat),
            thr);
      } else {
        add(rep, "lambda_min(S_beta1)>=sigma_max(H[b,b+c])",
            std::max(0.0, smax3 - std::min(lmin1, kInf)), thr);
        if (r3.empty() && !r1.empty())
          add(rep, "lambda_min(S_beta1)>=0", std::max(0.0, -lmin1), thr);
      }
    } else {
      add(rep, "H[beta,beta+c] outside beta1=0",
          offdiag_residual(nb, {r1}, {c1}), thr);
      if (!r1.empty()) {
        add(rep, "S(H_beta1) PSD",
            std::max(0.0, -lambda_min(sym(pick(nb, r1, c1)))), thr);
      }
    }
  }
  finalize(rep);
  return rep;
}

ConeReport critical_cone_primal_contains(const GeAnalysis& an, const Matrix& h,
                                         double tol) {
  ConeReport direct = critical_cone_primal_direct(an, h, tol);
  ConeReport structural = critical_cone_primal_structural(an, h, tol);
  if (direct.member != structural.member) {
    // Verdicts may legitimately differ for directions sitting on the cone
    // boundary; treat a residual within the band of its threshold as such.
    const double band = 1e-7 * std::max(1.0, h.norm());
    bool boundary = false;
    for (const ConeReport* r : {&direct, &structural}) {
      for (const ConeCondition& c : r->conditions) {
        if (std::abs(c.residual - c.threshold) <= band) boundary = true;
      }
    }
    if (!boundary) {
      std::ostringstream os;
      os << "critical-cone routes disagree: direct residual "
         << direct.conditions.front().residual << ", structural verdict "
         << (structural.member ? "member" : "non-member");
      throw KyfanError("ROUTE_DISAGREEMENT", os.str());
    }
    structural.route = "structural(boundary)";
  }
  ConeReport rep;
  rep.member = structural.member;
  rep.route = structural.route == "structural(boundary)"
                  ? "structural(boundary)"
                  : "direct+structural";
  rep.conditions = direct.conditions;
  rep.conditions.insert(rep.conditions.end(), structural.conditions.begin(),
                        structural.conditions.end());
  return rep;
}

ConeReport critical_cone_primal_aff_contains(const GeAnalysis& an,
                                             const Matrix& h, double tol) {
  ConeReport rep;
  rep.route = "structural";
  const Matrix hi = an.orient(h);
  const double thr = tol * std::max(1.0, hi.norm());
  const Matrix p = an.svd.u.transpose() * hi * an.svd.v;

  if (an.case_tag == CaseTag::POSITIVE_SIGMA_K) {
    const Matrix mb = sym(pick(p, an.beta, an.beta));
    const std::vector<int> l1 = local_positions(an.beta, an.beta1);
    const std::vector<int> l2 = local_positions(an.beta, an.beta2);
    const std::vector<int> l3 = local_positions(an.beta, an.beta3);
    add(rep, "S(H_beta) off-compartments=0",
        offdiag_residual(mb, {l1, l2, l3}, {l1, l2, l3}), thr);
    if (!l2.empty()) {
      const Matrix m2 = pick(mb, l2, l2);
      const double tau_hat = m2.trace() / static_cast<double>(l2.size());
      add(rep, "S(H_beta2)=tau*I",
          (m2 - tau_hat * Matrix::Identity(l2.size(), l2.size())).norm(), thr);
    }
  } else {
    const std::vector<int> bc = cat(an.beta, c_columns(an));
    const Matrix nb = pick(p, an.beta, bc);
    const std::vector<int> r1 = local_positions(an.beta, an.beta1);
    const std::vector<int> r2 = local_positions(an.beta, an.beta2);
    const std::vector<int> r3 = local_positions(an.beta, an.beta3);
    const std::vector<int> c1 = local_positions(bc, an.beta1);
    const std::vector<int> c2 = local_positions(bc, an.beta2);
    std::vector<int> c3c = local_positions(bc, an.beta3);
    for (std::size_t j = an.beta.size(); j < bc.size(); ++j)
      c3c.push_back(static_cast<int>(j));

    if (!r1.empty()) {
      const Matrix n11 = pick(nb, r1, c1);
      add(rep, "H_beta1_beta1 symmetric", (n11 - n11.transpose()).norm(), thr);
    }
    if (an.nuclear_eq_k) {
      add(rep, "H[beta,beta+c] off-compartments=0",
          offdiag_residual(nb, {r1, r2, r3}, {c1, c2, c3c}), thr);
      if (!r2.empty()) {
        const Matrix n22 = pick(nb, r2, c2);
        const double tau_hat = n22.trace() / static_cast<double>(r2.size());
        add(rep, "H_beta2_beta2=tau*I",
            (n22 - tau_hat * Matrix::Identity(r2.size(), r2.size())).norm(),
            thr);
      }
    } else {
      add(rep, "H[beta,beta+c] outside beta1=0",
          offdiag_residual(nb, {r1}, {c1}), thr);
    }
  }
  finalize(rep);
  return rep;
}

namespace {

/// Shared core of the dual critical cone and its affine hull. With
/// `with_inequalities` false the semidefinite and trace inequalities are
/// dropped, leaving the linear span.
ConeReport dual_cone_core(const GeAnalysis& an, const Matrix& h, double tol,
                          bool with_inequalities) {
  ConeReport rep;
  if (an.dual_norm_lt_1) {
    rep.route = "interior";
    add(rep, "dual_norm(S_bar)<1", an.dual_norm_s, 1.0 - an.tol_class);
    finalize(rep);
    return rep;
  }
  rep.route = "structural";
  const Matrix hi = an.orient(h);
  const double thr = tol * std::max(1.0, hi.norm());
  const Matrix p = an.svd.u.transpose() * hi * an.svd.v;

  // Compartment over alpha + beta1 (the singular values of S_bar equal to 1):
  // the symmetric part must vanish outside the (beta1, beta1) block, which is
  // free symmetric (and <= 0 for the cone itself).
  const std::vector<int> ab1 = cat(an.alpha, an.beta1);
  const Matrix sa = sym(pick(p, ab1, ab1));
  const std::vector<int> la = local_positions(ab1, an.alpha);
  const std::vector<int> lb1 = local_positions(ab1, an.beta1);
  add(rep, "S(H[alpha+beta1]) outside beta1=0",
      offdiag_residual(sa, {lb1}, {lb1}), thr);
  if (with_inequalities && !lb1.empty()) {
    add(rep, "S(H_beta1) NSD",
        std::max(0.0, lambda_max(pick(sa, lb1, lb1))), thr);
  }

  if (an.case_tag == CaseTag::POSITIVE_SIGMA_K) {
    double trb = 0.0;
    for (int i : an.beta) trb += p(i, i);
    add(rep, "tr(H_beta)=0", std::abs(trb), thr);

    const std::vector<int> bg = cat(an.beta3, an.gamma);
    if (!bg.empty() || an.n() > an.m()) {
      const std::vector<int> bgc = cat(bg, c_columns(an));
      const Matrix cm = pick(p, bg, bgc);
      const std::vector<int> r3 = local_positions(bg, an.beta3);
      const std::vector<int> c3 = local_positions(bgc, an.beta3);
      add(rep, "H[beta3+gamma,beta3+gamma+c] outside beta3=0",
          offdiag_residual(cm, {r3}, {c3}), thr);
      if (!r3.empty()) {
        const Matrix n33 = pick(cm, r3, c3);
        add(rep, "H_beta3_beta3 symmetric", (n33 - n33.transpose()).norm(),
            thr);
        if (with_inequalities) {
          add(rep, "S(H_beta3) PSD", std::max(0.0, -lambda_min(sym(n33))),
              thr);
        }
      }
    }
  } else if (with_inequalities && an.nuclear_eq_k) {
    double tr12 = 0.0;
    for (int i : an.beta1) tr12 += p(i, i);
    for (int i : an.beta2) tr12 += p(i, i);
    const std::vector<int> b3c = cat(an.beta3, c_columns(an));
    const double nuc = pick(p, an.beta3, b3c).cwiseAbs().size() > 0
                           ? singular_values(pick(p, an.beta3, b3c)).sum()
                           : 0.0;
    add(rep, "tr(H[beta1+beta2])+nuclear(H[b,b+c])<=0",
        std::max(0.0, tr12 + nuc), thr);
  }
  finalize(rep);
  return rep;
}

}  // namespace

ConeReport critical_cone_dual_contains(const GeAnalysis& an, const Matrix& h,
                                       double tol) {
  return dual_cone_core(an, h, tol, true);
}

ConeReport critical_cone_dual_aff_contains(const GeAnalysis& an,
                                           const Matrix& h, double tol) {
  return dual_cone_core(an, h, tol, false);
}

}  // namespace kyfan
