/// @file module.cpp
/// @brief Python bindings for the main operations: norms, proximal pair,
///        solution-pair analysis, directional derivatives, cone membership,
///        and the sigma-term.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kyfan/cones.hpp"
#include "kyfan/derivatives.hpp"
#include "kyfan/ge.hpp"
#include "kyfan/norms.hpp"
#include "kyfan/oracles.hpp"
#include "kyfan/sigma_term.hpp"
#include "kyfan/spectral.hpp"
#include "kyfan/version.hpp"

namespace py = pybind11;
using namespace kyfan;

namespace {

py::list index_list(const std::vector<int>& idx) {
  py::list out;
  for (int i : idx) out.append(i);  // 0-based, python convention
  return out;
}

py::dict analysis_dict(const GeAnalysis& an) {
  py::dict d;
  d["case"] = an.case_tag == CaseTag::POSITIVE_SIGMA_K ? "POSITIVE_SIGMA_K"
                                                       : "ZERO_SIGMA_K";
  d["m"] = an.m();
  d["n"] = an.n();
  d["k"] = an.k;
  d["k0"] = an.k0;
  d["k1"] = an.k1;
  d["alpha"] = index_list(an.alpha);
  d["beta"] = index_list(an.beta);
  d["beta1"] = index_list(an.beta1);
  d["beta2"] = index_list(an.beta2);
  d["beta3"] = index_list(an.beta3);
  d["gamma"] = index_list(an.gamma);
  d["sigma"] = Vector(an.svd.sigma);
  d["sigma_bar"] = Vector(an.sigma_bar);
  d["u_bar"] = Vector(an.u_bar);
  d["sigma_k_bar"] = an.sigma_k_bar;
  d["dual_norm_s"] = an.dual_norm_s;
  d["nuclear_norm_s"] = an.nuclear_norm_s;
  d["nuclear_eq_k"] = an.nuclear_eq_k;
  d["dual_norm_lt_1"] = an.dual_norm_lt_1;
  d["transposed_internally"] = an.transposed();
  return d;
}

py::dict cone_dict(const ConeReport& rep) {
  py::dict d;
  d["member"] = rep.member;
  d["route"] = rep.route;
  py::list conds;
  for (const ConeCondition& c : rep.conditions) {
    py::dict cd;
    cd["name"] = c.name;
    cd["residual"] = c.residual;
    cd["threshold"] = c.threshold;
    conds.append(cd);
  }
  d["conditions"] = conds;
  return d;
}

py::dict sigma_dict(const SigmaTermResult& r) {
  py::dict d;
  d["omega_route"] = r.value_omega_route;
  d["quadratic_route"] = r.value_quadratic_route;
  d["route_gap"] = r.route_gap;
  d["zero_conditions_hold"] = r.equality_conditions_hold;
  return d;
}

ConeReport dispatch_cone(const GeAnalysis& an, const Matrix& h,
                         const std::string& kind, double tau, double tol) {
  if (kind == "tangent") return tangent_cone_contains(an, h, tau, tol);
  if (kind == "lin") return lineality_primal_contains(an, h, tol);
  if (kind == "lin-dual") return lineality_dual_contains(an, h, tol);
  if (kind == "critical") return critical_cone_primal_contains(an, h, tol);
  if (kind == "critical-aff")
    return critical_cone_primal_aff_contains(an, h, tol);
  if (kind == "critical-dual") return critical_cone_dual_contains(an, h, tol);
  if (kind == "critical-dual-aff")
    return critical_cone_dual_aff_contains(an, h, tol);
  throw KyfanError("PARAMETER_ERROR", "unknown cone kind: " + kind);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Variational calculus of the Ky Fan k-norm";
  m.attr("__version__") = version;

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const KyfanError& e) {
      PyErr_SetString(PyExc_ValueError,
                      (e.code() + ": " + std::string(e.what())).c_str());
    }
  });

  m.def("norm", &kyfan_norm, py::arg("x"), py::arg("k"),
        "Sum of the k largest singular values of x.");
  m.def("dual_norm", &dual_kyfan_norm, py::arg("x"), py::arg("k"),
        "Dual norm: max(sigma_1(x), nuclear(x)/k).");
  m.def("vector_norm", &vector_knorm, py::arg("x"), py::arg("k"),
        "Sum of the k largest absolute entries of x.");
  m.def("project_dual_ball", &project_dual_ball, py::arg("x"), py::arg("k"),
        "Euclidean projection onto {s : ||s||_inf <= 1, ||s||_1 <= k}.");
  m.def("vector_prox", &vector_knorm_prox, py::arg("x"), py::arg("k"),
        "Proximal map of the vector k-norm (unit parameter).");

  m.def(
      "prox_pair",
      [](const Matrix& x, int k) {
        const ProxPair pp = matrix_prox_pair(x, k);
        return py::make_tuple(pp.prox_theta, pp.prox_theta_star);
      },
      py::arg("x"), py::arg("k"),
      "Moreau pair (prox of the norm, prox of its conjugate) at x.");

  m.def(
      "analyze",
      [](const Matrix& x_bar, const Matrix& s_bar, int k) {
        return analysis_dict(analyze_ge(x_bar, s_bar, k));
      },
      py::arg("x_bar"), py::arg("s_bar"), py::arg("k"),
      "Validate a solution pair of 0 in -S + d theta(X) and return the "
      "index taxonomy (0-based indices).");

  m.def(
      "strict_complementarity",
      [](const Matrix& x_bar, const Matrix& s_bar, int k) {
        const StrictCompResult sc =
            check_strict_complementarity(analyze_ge(x_bar, s_bar, k));
        py::dict d;
        d["strict"] = sc.strict;
        d["margin"] = sc.margin;
        return d;
      },
      py::arg("x_bar"), py::arg("s_bar"), py::arg("k"));

  m.def(
      "theta_dd1",
      [](const Matrix& x, const Matrix& h, int k) {
        return theta_dd1(ordered_svd(x), h, k);
      },
      py::arg("x"), py::arg("h"), py::arg("k"),
      "First-order directional derivative of the norm at x along h.");

  m.def(
      "theta_dd2",
      [](const Matrix& x, const Matrix& h, const Matrix& w, int k) {
        return theta_dd2(ordered_svd(x), h, w, k);
      },
      py::arg("x"), py::arg("h"), py::arg("w"), py::arg("k"),
      "Second-order (parabolic) directional derivative at x along (h, w).");

  m.def(
      "cone_member",
      [](const Matrix& x_bar, const Matrix& s_bar, int k, const Matrix& h,
         const std::string& kind, double tau, double tol) {
        return cone_dict(
            dispatch_cone(analyze_ge(x_bar, s_bar, k), h, kind, tau, tol));
      },
      py::arg("x_bar"), py::arg("s_bar"), py::arg("k"), py::arg("h"),
      py::arg("kind"), py::arg("tau") = 0.0, py::arg("tol") = 1e-8,
      "Cone membership; kind in {tangent, lin, lin-dual, critical, "
      "critical-aff, critical-dual, critical-dual-aff}.");

  m.def(
      "sigma_term",
      [](const Matrix& x_bar, const Matrix& s_bar, int k, const Matrix& h) {
        const GeAnalysis an = analyze_ge(x_bar, s_bar, k);
        const SigmaTermResult up = upsilon_primal(an, h);
        const SigmaTermResult ud = upsilon_dual(an, h);
        const SupportT2Result st = support_t2(an, h);
        py::dict d;
        d["upsilon"] = sigma_dict(up);
        d["upsilon_dual"] = sigma_dict(ud);
        py::dict sd;
        sd["finite"] = st.finite;
        if (st.finite) {
          sd["value"] = st.value;
        } else {
          sd["value"] = py::none();
          sd["flag"] = st.flag;
        }
        d["support_t2"] = sd;
        return d;
      },
      py::arg("x_bar"), py::arg("s_bar"), py::arg("k"), py::arg("h"),
      "Both Upsilon routes, the zero-value predicate, and the support of "
      "the second-order tangent set.");

  m.def(
      "random_instance",
      [](int m, int n, int k, const std::string& profile,
         std::uint64_t seed) {
        const GeInstance inst = random_ge_instance(m, n, k, profile, seed);
        return py::make_tuple(inst.x_bar, inst.s_bar);
      },
      py::arg("m"), py::arg("n"), py::arg("k"),
      py::arg("profile") = "generic", py::arg("seed") = 0,
      "Random valid solution pair (x_bar, s_bar).");

  m.def(
      "verify",
      [](const Matrix& x_bar, const Matrix& s_bar, int k,
         std::uint64_t seed) {
        OracleConfig cfg;
        cfg.seed = seed;
        py::list out;
        for (const VerifyCheck& c :
             run_verify(analyze_ge(x_bar, s_bar, k), cfg)) {
          py::dict d;
          d["name"] = c.name;
          d["pass"] = c.pass;
          d["residual"] = c.residual;
          d["threshold"] = c.threshold;
          out.append(d);
        }
        return out;
      },
      py::arg("x_bar"), py::arg("s_bar"), py::arg("k"), py::arg("seed") = 0,
      "Run the full oracle battery; returns one record per check.");
}
