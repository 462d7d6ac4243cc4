#pragma once

/// @file sigma_term.hpp
/// @brief The sigma-term of second-order optimality conditions: support
///        functions of second-order tangent sets, the Upsilon functions
///        (two independent computation routes each), and their sign/equality
///        structure.

#include "kyfan/ge.hpp"
#include "kyfan/types.hpp"

namespace kyfan {

struct SigmaTermResult {
  double value_omega_route = 0;      ///< canonical Omega-trace route
  double value_quadratic_route = 0;  ///< independent quadratic expansion
  bool equality_conditions_hold = false;
  double route_gap = 0;
};

/// Upsilon at (X_bar, S_bar) along H.
/// Route A (canonical): POSITIVE case
///   sum_{l<=r0} tr(2 Omega_{a_l}(X_bar,H)) + <Diag(u_beta), 2 Omega_beta(X_bar,H)>;
/// ZERO case the Omega_beta term is replaced by
///   <Diag(u_beta), 2 U_beta^T H X_bar^+ H V_beta>.
/// Route B: the quadratic expansion in weighted squared compartment norms of
/// U^T H V. Throws KyfanError(ROUTE_DISAGREEMENT) when the routes differ by
/// more than 1e-9 * max(1, ||H||_F^2).
SigmaTermResult upsilon_primal(const GeAnalysis& an, const Matrix& h);

/// The dual counterpart built from S_bar's spectral data with sigma_bar
/// weights.
SigmaTermResult upsilon_dual(const GeAnalysis& an, const Matrix& h);

/// The explicit compartment conditions equivalent to Upsilon = 0.
bool upsilon_zero_conditions(const GeAnalysis& an, const Matrix& h,
                             double tol = 1e-8);

/// Support function of the second-order tangent set at (S_bar, -1):
/// equals Upsilon (Route A) when H belongs to the primal critical cone,
/// +infinity otherwise.
struct SupportT2Result {
  double value = 0;
  bool finite = false;
  std::string flag;  ///< "NOT_IN_CRITICAL_CONE" when infinite
};
SupportT2Result support_t2(const GeAnalysis& an, const Matrix& h);

}  // namespace kyfan
