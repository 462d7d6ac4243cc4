#pragma once

/// @file oracles.hpp
/// @brief Independent numerical ground truth: finite differences, Dykstra
///        projection, subgradient-inequality sampling, and random instance
///        construction. These deliberately avoid the analytic code paths
///        they are used to check.

#include <cstdint>
#include <string>
#include <vector>

#include "kyfan/ge.hpp"
#include "kyfan/types.hpp"

namespace kyfan {

struct OracleConfig {
  std::vector<double> fd_steps{1e-3, 1e-4, 1e-5};
  int dykstra_iters = 20000;
  int sample_count = 200;
  std::uint64_t seed = 0;
};

/// Forward difference quotient [theta(X + tH) - theta(X)] / t.
double fd_first(const Matrix& x, const Matrix& h, int k, double t);

/// Parabolic quotient
/// [theta(X + tH + (t^2/2) W) - theta(X) - t * dd1] / (t^2 / 2),
/// where dd1 = theta'(X; H) is supplied by the caller.
double fd_parabolic(const Matrix& x, const Matrix& h, const Matrix& w, int k,
                    double t, double dd1);

/// Dykstra alternating projection between the infinity-norm box and the
/// scaled l1 ball. Converged when the successive change drops to 1e-12;
/// `converged` is false if the cap is hit with change above 1e-9.
struct DykstraResult {
  Vector point;
  int iterations = 0;
  bool converged = false;
  double last_change = 0;
};
DykstraResult dykstra_project(const Vector& x, int k, int iters = 20000);

/// Samples the subgradient inequality theta(Y) >= theta(X_bar) +
/// <S_bar, Y - X_bar> - 1e-9 over `n` Gaussian directions plus structured
/// points (0, +-X_bar, truncated singular-factor outer products of both
/// X_bar and S_bar). Returns false iff some sample violates it.
bool sample_subgradient_inequality(const Matrix& x_bar, const Matrix& s_bar,
                                   int k, int n, std::uint64_t seed);

/// Random valid instance of the generalized equation, built by drawing a
/// spectrum with the requested profile, composing X with random orthogonal
/// factors, and splitting it with matrix_prox_pair.
/// Profiles: generic, clustered, rank_deficient, zero_sigma_k, boundary_u.
struct GeInstance {
  Matrix x_bar, s_bar;
  GeAnalysis analysis;
  std::string profile;
  std::uint64_t seed = 0;
};
GeInstance random_ge_instance(int m, int n, int k,
                              const std::string& profile, std::uint64_t seed);

/// Deterministic random helpers shared by tests and generators.
Matrix random_gaussian(int m, int n, std::uint64_t seed);
Matrix random_orthogonal(int d, std::uint64_t seed);

/// A direction inside the primal critical cone at the analyzed pair,
/// constructed by imposing the block pattern (with comfortable interlacing
/// margins) on a random draw.
Matrix random_critical_direction(const GeAnalysis& an, std::uint64_t seed);

/// A direction satisfying the explicit Upsilon = 0 compartment conditions.
Matrix random_upsilon_zero_direction(const GeAnalysis& an, std::uint64_t seed);

/// One named consistency check of the verification battery.
struct VerifyCheck {
  std::string name;
  bool pass = false;
  double residual = 0;   ///< worst residual observed (check-specific scale)
  double threshold = 0;  ///< the bound it was compared against
};

/// Full oracle battery on one validated instance: duality and sampling,
/// Moreau decomposition, prox vs Dykstra, first/second-order finite
/// differences, cone route agreement, Upsilon signs, route gaps, zero-value
/// conditions, support bound, and gauge invariance.
std::vector<VerifyCheck> run_verify(const GeAnalysis& an,
                                    const OracleConfig& cfg);

}  // namespace kyfan
