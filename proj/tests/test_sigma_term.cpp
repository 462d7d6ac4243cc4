#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "kyfan/derivatives.hpp"
#include "kyfan/ge.hpp"
#include "kyfan/oracles.hpp"
#include "kyfan/sigma_term.hpp"
#include "kyfan/spectral.hpp"
#include "kyfan/types.hpp"

using namespace kyfan;

namespace {

Matrix diagm(std::initializer_list<double> xs) {
  const auto n = static_cast<Eigen::Index>(xs.size());
  Matrix m = Matrix::Zero(n, n);
  Eigen::Index i = 0;
  for (double x : xs) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

Matrix offdiag2() {
  Matrix h(2, 2);
  h << 0, 1, 1, 0;
  return h;
}

}  // namespace

TEST_CASE("positive case worked example: both routes give -2") {
  // beta1 = {0}, gamma = {1}; H couples them, which carries a negative
  // quadratic coefficient 2 * 1 / (1 - 2) = -2 on the symmetric part.
  const GeAnalysis an = analyze_ge(diagm({2, 1}), diagm({1, 0}), 1);
  const SigmaTermResult up = upsilon_primal(an, offdiag2());
  CHECK(up.value_omega_route == doctest::Approx(-2).epsilon(1e-12));
  CHECK(up.value_quadratic_route == doctest::Approx(-2).epsilon(1e-12));
  CHECK(up.route_gap < 1e-12);
  CHECK(!up.equality_conditions_hold);

  const SigmaTermResult ud = upsilon_dual(an, offdiag2());
  CHECK(ud.value_omega_route == doctest::Approx(-2).epsilon(1e-12));
  CHECK(ud.value_quadratic_route == doctest::Approx(-2).epsilon(1e-12));

  // the direction is critical here, so the support is attained at -2
  const SupportT2Result st = support_t2(an, offdiag2());
  CHECK(st.finite);
  CHECK(st.value == doctest::Approx(-2).epsilon(1e-12));
}

TEST_CASE("positive case zero direction: diagonal H decouples") {
  const GeAnalysis an = analyze_ge(diagm({2, 1}), diagm({1, 0}), 1);
  const Matrix h = diagm({1, 5});
  const SigmaTermResult up = upsilon_primal(an, h);
  CHECK(std::abs(up.value_omega_route) < 1e-12);
  CHECK(std::abs(up.value_quadratic_route) < 1e-12);
  CHECK(up.equality_conditions_hold);
  const SigmaTermResult ud = upsilon_dual(an, h);
  CHECK(std::abs(ud.value_omega_route) < 1e-12);
}

TEST_CASE("zero case worked example: alpha coupling") {
  // X_bar = diag(2, 0), S_bar = diag(1, 0.5), k = 2: ZERO case with
  // alpha = {0}, beta2 = {1}. For the symmetric off-diagonal H:
  //   Upsilon  = 2 (mu - 1) / nu * |S_01|^2 = 2 (0.5 - 1)/2 = -0.5,
  //   Upsilon* = 2 (0 - 2) / (1 - 0.5) * |S_01|^2 = -8.
  const GeAnalysis an = analyze_ge(diagm({2, 0}), diagm({1, 0.5}), 2);
  REQUIRE(an.case_tag == CaseTag::ZERO_SIGMA_K);
  const SigmaTermResult up = upsilon_primal(an, offdiag2());
  CHECK(up.value_omega_route == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(up.value_quadratic_route == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(!up.equality_conditions_hold);

  const SigmaTermResult ud = upsilon_dual(an, offdiag2());
  CHECK(ud.value_omega_route == doctest::Approx(-8).epsilon(1e-12));
  CHECK(ud.value_quadratic_route == doctest::Approx(-8).epsilon(1e-12));

  // diagonal directions satisfy the zero conditions
  const SigmaTermResult z = upsilon_primal(an, diagm({0.3, -0.7}));
  CHECK(std::abs(z.value_omega_route) < 1e-12);
  CHECK(z.equality_conditions_hold);
  CHECK(std::abs(upsilon_dual(an, diagm({0.3, -0.7})).value_omega_route) <
        1e-12);

  // the critical off-diagonal direction attains the support at -0.5
  const SupportT2Result st = support_t2(an, offdiag2());
  CHECK(st.finite);
  CHECK(st.value == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("support is infinite outside the critical cone") {
  const GeAnalysis an = analyze_ge(diagm({2, 1, 1}), diagm({1, 0.5, 0.5}), 2);
  const SupportT2Result st = support_t2(an, diagm({0, 1, 0}));
  CHECK(!st.finite);
  CHECK(st.flag == "NOT_IN_CRITICAL_CONE");
}

TEST_CASE("sign and route agreement over random instances") {
  const char* profiles[] = {"generic", "clustered", "rank_deficient",
                            "zero_sigma_k", "boundary_u"};
  for (int p = 0; p < 5; ++p) {
    for (int t = 0; t < 6; ++t) {
      const int m = 2 + t % 4;
      const int n = m + (t + p) % 3;
      const int k = 1 + t % m;
      const GeInstance inst =
          random_ge_instance(m, n, k, profiles[p], 8000 + 10 * p + t);
      const GeAnalysis& an = inst.analysis;
      for (int j = 0; j < 8; ++j) {
        const Matrix h = random_gaussian(m, n, 9000 + 100 * p + 10 * t + j);
        const double s2 = std::max(1.0, h.squaredNorm());
        SigmaTermResult up, ud;
        CHECK_NOTHROW(up = upsilon_primal(an, h));
        CHECK_NOTHROW(ud = upsilon_dual(an, h));
        CHECK(up.value_omega_route <= 1e-9 * s2);
        CHECK(ud.value_omega_route <= 1e-9 * s2);
        CHECK(up.route_gap <= 1e-9 * s2);
        CHECK(ud.route_gap <= 1e-9 * s2);
      }
    }
  }
}

TEST_CASE("constructed zero directions satisfy the three-way equivalence") {
  const char* profiles[] = {"generic", "boundary_u", "zero_sigma_k",
                            "rank_deficient"};
  for (int p = 0; p < 4; ++p) {
    for (int t = 0; t < 5; ++t) {
      const GeInstance inst = random_ge_instance(
          3 + t % 3, 4 + t % 3, 1 + t % 3, profiles[p], 10000 + 10 * p + t);
      const GeAnalysis& an = inst.analysis;
      const Matrix h = random_upsilon_zero_direction(an, 11000 + 10 * p + t);
      const double s2 = std::max(1.0, h.squaredNorm());
      const SigmaTermResult up = upsilon_primal(an, h);
      const SigmaTermResult ud = upsilon_dual(an, h);
      CHECK(up.equality_conditions_hold);
      CHECK(std::abs(up.value_omega_route) <= 1e-9 * s2);
      CHECK(std::abs(ud.value_omega_route) <= 1e-9 * s2);
    }
  }
}

TEST_CASE("support bound holds over sampled second directions") {
  const GeInstance inst = random_ge_instance(4, 5, 2, "zero_sigma_k", 123);
  const GeAnalysis& an = inst.analysis;
  const Matrix h = random_critical_direction(an, 7);
  const SupportT2Result st = support_t2(an, h);
  REQUIRE(st.finite);
  const OrderedSvd xsvd = an.xbar_svd();
  for (int j = 0; j < 50; ++j) {
    const Matrix w = random_gaussian(4, 5, 12000 + j) * 3.0;
    const double lhs =
        (an.s_bar.array() * w.array()).sum() - theta_dd2(xsvd, h, w, an.k);
    CHECK(lhs <= st.value + 1e-7);
  }
  // ZERO case: W* = 2 H X^+ H attains the bound
  const Matrix hi = an.orient(h);
  Matrix wstar = 2.0 * hi * an.xbar_pinv() * hi;
  if (an.transposed()) wstar.transposeInPlace();
  const double attained = (an.s_bar.array() * wstar.array()).sum() -
                          theta_dd2(xsvd, h, wstar, an.k);
  CHECK(std::abs(attained - st.value) < 1e-8);
}

TEST_CASE("upsilon values are gauge invariant") {
  const GeInstance inst = random_ge_instance(4, 6, 3, "boundary_u", 321);
  const GeAnalysis& an = inst.analysis;
  for (int j = 0; j < 5; ++j) {
    const Matrix h = random_gaussian(4, 6, 13000 + j);
    const double up = upsilon_primal(an, h).value_omega_route;
    const double ud = upsilon_dual(an, h).value_omega_route;
    const bool zc = upsilon_zero_conditions(an, h);
    for (std::uint64_t s = 1; s <= 10; ++s) {
      GeAnalysis alt = an;
      alt.svd = equivalent_svd(an.svd, 500 + s);
      const double scale = 1e-8 * std::max(1.0, h.squaredNorm());
      CHECK(std::abs(upsilon_primal(alt, h).value_omega_route - up) < scale);
      CHECK(std::abs(upsilon_dual(alt, h).value_omega_route - ud) < scale);
      CHECK(upsilon_zero_conditions(alt, h) == zc);
    }
  }
}

TEST_CASE("tall orientation round-trips through the sigma term") {
  const GeInstance inst = random_ge_instance(6, 3, 2, "generic", 444);
  const GeAnalysis& an = inst.analysis;
  REQUIRE(an.transposed());
  const Matrix h = random_gaussian(6, 3, 445);
  const SigmaTermResult up = upsilon_primal(an, h);
  CHECK(up.route_gap <= 1e-9 * std::max(1.0, h.squaredNorm()));
  CHECK(up.value_omega_route <= 1e-9);
  CHECK_THROWS_AS(upsilon_primal(an, Matrix::Zero(3, 6)), KyfanError);
}
