/// @file sigma_term.cpp
/// @brief The sigma-term: Upsilon / dual Upsilon via two independent routes,
///        the explicit zero-value conditions, and the second-order tangent
///        set support function.

#include "kyfan/sigma_term.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kyfan/cones.hpp"
#include "kyfan/derivatives.hpp"
#include "kyfan/tolerances.hpp"

namespace kyfan {

namespace {

std::vector<int> block_indices(const IndexBlock& b) {
  std::vector<int> out;
  for (int i = b.first; i <= b.last; ++i) out.push_back(i);
  return out;
}

Matrix pick(const Matrix& p, const std::vector<int>& rows,
            const std::vector<int>& cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(i, j) = p(rows[i], cols[j]);
  return out;
}

double sq(double x) { return x * x; }

double block_norm2(const Matrix& a, const IndexBlock& r, const IndexBlock& c) {
  return a.block(r.first, c.first, r.size(), c.size()).squaredNorm();
}

double row_block_norm2(const Matrix& a, const IndexBlock& r) {
  if (a.cols() == 0) return 0.0;
  return a.middleRows(r.first, r.size()).squaredNorm();
}

/// Canonical route: weighted Omega traces over the positive blocks of the
/// base matrix plus the pseudoinverse quadratic term over its zero block.
/// `base` carries the snapped spectrum (sigma_bar for the primal, u_bar for
/// the dual); `weights` is the complementary snapped spectrum.
double omega_route(const OrderedSvd& base, const Vector& weights,
                   const Matrix& h_caller, const Matrix& hi) {
  double val = 0.0;
  for (const IndexBlock& blk : base.groups.blocks) {
    const double nu = base.sigma(blk.first);
    const OmegaMatrix om =
        omega_matrix(base, h_caller, block_indices(blk), nu);
    for (int j = 0; j < blk.size(); ++j) {
      val += 2.0 * weights(blk.first + j) * om.value(j, j);
    }
  }
  const IndexBlock& zb = base.groups.zero_block;
  if (!zb.empty()) {
    // 2 * <Diag(weights_z), U_z^T H Base^+ H V_z>, expanded through the
    // shared factors so only the diagonal entries are formed.
    Vector pinv_diag = Vector::Zero(base.m());
    for (int i = 0; i < base.m(); ++i)
      if (base.sigma(i) > 0) pinv_diag(i) = 1.0 / base.sigma(i);
    const Matrix a = base.u.transpose() * hi * base.v1();  // m x m
    for (int i = zb.first; i <= zb.last; ++i) {
      if (weights(i) == 0.0) continue;
      double diag = 0.0;
      for (int j = 0; j < base.m(); ++j)
        diag += a(i, j) * pinv_diag(j) * a(j, i);
      val += 2.0 * weights(i) * diag;
    }
  }
  return val;
}

struct Compartments {
  Matrix s;   ///< symmetric part of U^T H V1
  Matrix t;   ///< skew part of U^T H V1
  Matrix h2;  ///< U^T H V2 (m x (n - m), possibly zero columns)
};

Compartments split_direction(const OrderedSvd& svd, const Matrix& hi) {
  Compartments c;
  const Matrix p1 = svd.u.transpose() * hi * svd.v1();
  c.s = 0.5 * (p1 + p1.transpose());
  c.t = 0.5 * (p1 - p1.transpose());
  c.h2 = svd.n() > svd.m()
             ? (svd.u.transpose() * hi * svd.v2()).eval()
             : Matrix::Zero(svd.m(), 0);
  return c;
}

bool in_beta12(Region r) { return r == Region::BETA1 || r == Region::BETA2; }
bool in_gamma_like(Region r) { return r == Region::GAMMA; }

/// Quadratic-expansion route for the primal Upsilon, POSITIVE case.
double quad_route_primal_positive(const GeAnalysis& an, const Compartments& c) {
  const double sk = an.sigma_k_bar;
  double val = 0.0;
  for (const BlockInfo& a : an.blocks) {
    if (a.region == Region::ALPHA) {
      const double nu = a.nu_bar;
      for (const BlockInfo& b : an.blocks) {
        if (b.region == Region::BETA2) {
          val += 2.0 * (1.0 - b.mu_bar) / (sk - nu) *
                 block_norm2(c.s, a.idx, b.idx);
        } else if (b.region == Region::BETA3 || in_gamma_like(b.region)) {
          val += 2.0 / (b.nu_bar - nu) * block_norm2(c.s, a.idx, b.idx);
        }
        val += -2.0 / (b.nu_bar + nu) * block_norm2(c.t, a.idx, b.idx);
      }
      val += -(1.0 / nu) * row_block_norm2(c.h2, a.idx);
    } else if (in_beta12(a.region)) {
      const double mu = a.mu_bar;
      for (const BlockInfo& b : an.blocks) {
        if (in_gamma_like(b.region)) {
          val += 2.0 * mu / (b.nu_bar - sk) * block_norm2(c.s, a.idx, b.idx);
        }
        val += -2.0 * mu / (b.nu_bar + sk) * block_norm2(c.t, a.idx, b.idx);
      }
      val += -(mu / sk) * row_block_norm2(c.h2, a.idx);
    }
  }
  return val;
}

/// Quadratic-expansion route for the primal Upsilon, ZERO case.
double quad_route_primal_zero(const GeAnalysis& an, const Compartments& c) {
  double val = 0.0;
  for (const BlockInfo& a : an.blocks) {
    if (a.region != Region::ALPHA) continue;
    const double nu = a.nu_bar;
    for (const BlockInfo& b : an.blocks) {
      if (b.region == Region::ALPHA) {
        val += -2.0 / (b.nu_bar + nu) * block_norm2(c.t, a.idx, b.idx);
      } else {
        val += 2.0 * (b.mu_bar - 1.0) / nu * block_norm2(c.s, a.idx, b.idx);
        val += -2.0 * (1.0 + b.mu_bar) / nu * block_norm2(c.t, a.idx, b.idx);
      }
    }
    val += -(1.0 / nu) * row_block_norm2(c.h2, a.idx);
  }
  return val;
}

/// Quadratic-expansion route for the dual Upsilon; a single block-pair
/// coefficient table covers both cases. sigma_hat is the snapped sigma_bar
/// block value, u_hat the snapped u_bar block value.
double quad_route_dual(const GeAnalysis& an, const Compartments& c) {
  const std::size_t nb = an.blocks.size();
  double val = 0.0;
  for (std::size_t i = 0; i < nb; ++i) {
    const BlockInfo& a = an.blocks[i];
    // H2 rows couple only through positively weighted u_bar blocks.
    if (a.mu_bar > 0.0) {
      val += -(a.nu_bar / a.mu_bar) * row_block_norm2(c.h2, a.idx);
    }
    for (std::size_t j = i; j < nb; ++j) {
      const BlockInfo& b = an.blocks[j];
      const double usum = a.mu_bar + b.mu_bar;
      const double udiff = a.mu_bar - b.mu_bar;
      double cs = 0.0, ct = 0.0;
      if (std::abs(udiff) > 1e-15) {
        cs = 2.0 * (b.nu_bar - a.nu_bar) / udiff;
      }
      if (usum > 0.0) {
        ct = (i == j) ? -(a.nu_bar / a.mu_bar)
                      : -2.0 * (a.nu_bar + b.nu_bar) / usum;
      }
      if (cs != 0.0) val += cs * block_norm2(c.s, a.idx, b.idx);
      if (ct != 0.0) val += ct * block_norm2(c.t, a.idx, b.idx);
    }
  }
  return val;
}

SigmaTermResult assemble(const GeAnalysis& an, const Matrix& hi, double a,
                         double b, bool conditions) {
  SigmaTermResult out;
  out.value_omega_route = a;
  out.value_quadratic_route = b;
  out.route_gap = std::abs(a - b);
  out.equality_conditions_hold = conditions;
  const double thr = tol::route_gap * std::max(1.0, hi.squaredNorm());
  if (out.route_gap > thr) {
    std::ostringstream os;
    os << "sigma-term routes disagree: omega route " << a
       << ", quadratic route " << b << ", gap " << out.route_gap
       << " > " << thr;
    throw KyfanError("ROUTE_DISAGREEMENT", os.str());
  }
  return out;
}

}  // namespace

SigmaTermResult upsilon_primal(const GeAnalysis& an, const Matrix& h) {
  const Matrix hi = an.orient(h);
  const OrderedSvd xsvd = an.xbar_svd();

  double route_a = omega_route(xsvd, an.u_bar, h, hi);
  const Compartments c = split_direction(an.svd, hi);
  const double route_b = an.case_tag == CaseTag::POSITIVE_SIGMA_K
                             ? quad_route_primal_positive(an, c)
                             : quad_route_primal_zero(an, c);
  return assemble(an, hi, route_a, route_b, upsilon_zero_conditions(an, h));
}

SigmaTermResult upsilon_dual(const GeAnalysis& an, const Matrix& h) {
  const Matrix hi = an.orient(h);
  const OrderedSvd ssvd = an.sbar_svd();

  const double route_a = omega_route(ssvd, an.sigma_bar, h, hi);
  const Compartments c = split_direction(an.svd, hi);
  const double route_b = quad_route_dual(an, c);
  return assemble(an, hi, route_a, route_b, upsilon_zero_conditions(an, h));
}

bool upsilon_zero_conditions(const GeAnalysis& an, const Matrix& h,
                             double tol) {
  const Matrix hi = an.orient(h);
  const double thr = tol * std::max(1.0, hi.norm());
  const Matrix p = an.svd.u.transpose() * hi * an.svd.v;

  std::vector<int> ccols;
  for (int j = an.m(); j < an.n(); ++j) ccols.push_back(j);

  double res = 0.0;
  auto zero_of = [&](const std::vector<int>& rows,
                     const std::vector<int>& cols) {
    if (rows.empty() || cols.empty()) return;
    res = std::max(res, pick(p, rows, cols).norm());
  };
  auto tie_of = [&](const std::vector<int>& rows,
                    const std::vector<int>& cols) {
    if (rows.empty() || cols.empty()) return;
    res = std::max(
        res, (pick(p, rows, cols) - pick(p, cols, rows).transpose()).norm());
  };

  if (an.case_tag == CaseTag::POSITIVE_SIGMA_K) {
    std::vector<int> comp = an.alpha;
    comp.insert(comp.end(), an.beta1.begin(), an.beta1.end());
    comp.insert(comp.end(), an.beta2.begin(), an.beta2.end());
    tie_of(comp, comp);
    tie_of(an.beta1, an.beta3);
    tie_of(an.beta2, an.beta3);
    zero_of(an.alpha, an.beta2);
    zero_of(an.beta2, an.alpha);
    zero_of(an.alpha, an.beta3);
    zero_of(an.beta3, an.alpha);
    zero_of(an.alpha, an.gamma);
    zero_of(an.gamma, an.alpha);
    zero_of(an.beta1, an.gamma);
    zero_of(an.gamma, an.beta1);
    zero_of(an.beta2, an.gamma);
    zero_of(an.gamma, an.beta2);
    zero_of(comp, ccols);
  } else {
    tie_of(an.alpha, an.alpha);
    tie_of(an.alpha, an.beta1);
    zero_of(an.alpha, an.beta2);
    zero_of(an.beta2, an.alpha);
    zero_of(an.alpha, an.beta3);
    zero_of(an.beta3, an.alpha);
    zero_of(an.alpha, ccols);
  }
  return res <= thr;
}

SupportT2Result support_t2(const GeAnalysis& an, const Matrix& h) {
  SupportT2Result out;
  const ConeReport cone = critical_cone_primal_contains(an, h);
  if (!cone.member) {
    out.finite = false;
    out.flag = "NOT_IN_CRITICAL_CONE";
    return out;
  }
  out.finite = true;
  out.value = upsilon_primal(an, h).value_omega_route;
  return out;
}

}  // namespace kyfan
