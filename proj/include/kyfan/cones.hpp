#pragma once

/// @file cones.hpp
/// @brief Membership tests for the tangent cone, the primal/dual lineality
///        spaces, the primal/dual critical cones, and their affine hulls.
///
/// Every test returns a ConeReport listing each checked condition with its
/// residual and threshold; `member` is true iff every residual is within its
/// threshold. Structural pattern tests use a single tolerance scaled by
/// max(1, ||H||_F).

#include <string>
#include <vector>

#include "kyfan/ge.hpp"
#include "kyfan/types.hpp"

namespace kyfan {

struct ConeCondition {
  std::string name;
  double residual = 0;
  double threshold = 0;
};

struct ConeReport {
  bool member = false;
  std::vector<ConeCondition> conditions;
  std::string route;  ///< which characterization produced the verdict
};

/// (H, tau) in the tangent cone of epi theta at (X_bar, theta(X_bar)):
/// theta'(X_bar; H) <= tau + tol.
ConeReport tangent_cone_contains(const GeAnalysis& an, const Matrix& h,
                                 double tau, double tol = 1e-8);

/// H in T^lin(X_bar): POSITIVE case S(U_beta^T H V_beta) = tau I for the
/// recovered tau (mean diagonal); ZERO case the whole [beta, beta+c]
/// compartment vanishes. Cross-checked against the definitional route
/// theta'(X_bar; H) = -theta'(X_bar; -H).
ConeReport lineality_primal_contains(const GeAnalysis& an, const Matrix& h,
                                     double tol = 1e-8);

/// H in the lineality space of the tangent cone of the dual ball at S_bar.
ConeReport lineality_dual_contains(const GeAnalysis& an, const Matrix& h,
                                   double tol = 1e-8);

/// H in the critical cone at (X_bar, S_bar). Evaluates both the direct route
/// theta'(X_bar;H) = <S_bar,H> and the structural block characterization and
/// requires agreement; throws KyfanError(ROUTE_DISAGREEMENT) when the two
/// verdicts differ beyond the tolerance band.
ConeReport critical_cone_primal_contains(const GeAnalysis& an,
                                         const Matrix& h, double tol = 1e-8);

/// Structural route only (exposed so callers can compare routes without
/// triggering the disagreement error).
ConeReport critical_cone_primal_structural(const GeAnalysis& an,
                                           const Matrix& h,
                                           double tol = 1e-8);
/// Direct route only.
ConeReport critical_cone_primal_direct(const GeAnalysis& an, const Matrix& h,
                                       double tol = 1e-8);

/// H in the affine hull of the primal critical cone (block shapes with the
/// scalar tau free and no semidefinite/interlacing constraints).
ConeReport critical_cone_primal_aff_contains(const GeAnalysis& an,
                                             const Matrix& h,
                                             double tol = 1e-8);

/// H in the critical cone of the dual generalized equation at (S_bar, X_bar).
/// Full space when the dual norm of S_bar is < 1.
ConeReport critical_cone_dual_contains(const GeAnalysis& an, const Matrix& h,
                                       double tol = 1e-8);

/// H in the affine hull of the dual critical cone.
ConeReport critical_cone_dual_aff_contains(const GeAnalysis& an,
                                           const Matrix& h,
                                           double tol = 1e-8);

/// theta'(X_bar; H) computed from the taxonomy (trace over alpha plus the
/// partial eigenvalue/singular-value sum over the beta compartment).
double theta_dd1_taxonomy(const GeAnalysis& an, const Matrix& h);

}  // namespace kyfan
