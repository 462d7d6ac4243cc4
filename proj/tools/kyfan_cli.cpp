/// @file kyfan_cli.cpp
/// @brief Command-line interface. Every subcommand prints one JSON report to
///        stdout (deterministic bytes for identical inputs) and encodes its
///        verdict in the exit code:
///          0  success / verdict true
///          1  verdict false (including invalid solution pairs)
///          2  input or parameter error
///          3  ROUTE_DISAGREEMENT between independent computation routes

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kyfan/cones.hpp"
#include "kyfan/derivatives.hpp"
#include "kyfan/ge.hpp"
#include "kyfan/io.hpp"
#include "kyfan/norms.hpp"
#include "kyfan/oracles.hpp"
#include "kyfan/sigma_term.hpp"
#include "kyfan/spectral.hpp"
#include "kyfan/tolerances.hpp"
#include "kyfan/types.hpp"
#include "kyfan/version.hpp"

namespace {

using kyfan::GeAnalysis;
using kyfan::Json;
using kyfan::KyfanError;
using kyfan::Matrix;

Json make_report(const std::string& command) {
  Json r;
  r["command"] = command;
  r["inputs"] = Json::object();
  r["outputs"] = Json::object();
  r["residuals"] = Json::object();
  r["verdicts"] = Json::object();
  r["seed"] = nullptr;
  r["version"] = kyfan::version;
  return r;
}

void emit(const Json& r) { std::cout << kyfan::dump_json(r); }

int exit_code_for(const KyfanError& e) {
  const std::string& c = e.code();
  if (c == "ROUTE_DISAGREEMENT") return 3;
  if (c == "INPUT_ERROR" || c == "PARAMETER_ERROR" ||
      c == "DECOMPOSITION_FAILURE") {
    return 2;
  }
  return 1;  // invalid pair / failed validation
}

const char* region_name(kyfan::Region r) {
  switch (r) {
    case kyfan::Region::ALPHA: return "alpha";
    case kyfan::Region::BETA1: return "beta1";
    case kyfan::Region::BETA2: return "beta2";
    case kyfan::Region::BETA3: return "beta3";
    case kyfan::Region::GAMMA: return "gamma";
  }
  return "?";
}

Json analysis_json(const GeAnalysis& an) {
  Json a;
  a["case"] = an.case_tag == kyfan::CaseTag::POSITIVE_SIGMA_K
                  ? "POSITIVE_SIGMA_K"
                  : "ZERO_SIGMA_K";
  a["m"] = an.m();
  a["n"] = an.n();
  a["k"] = an.k;
  a["transposed_internally"] = an.transposed();
  a["k0"] = an.k0;
  a["k1"] = an.k1;
  a["alpha"] = kyfan::indices_to_json(an.alpha);
  a["beta"] = kyfan::indices_to_json(an.beta);
  a["beta1"] = kyfan::indices_to_json(an.beta1);
  a["beta2"] = kyfan::indices_to_json(an.beta2);
  a["beta3"] = kyfan::indices_to_json(an.beta3);
  a["gamma"] = kyfan::indices_to_json(an.gamma);
  a["block_counters"] = Json{{"r0", an.r0},
                             {"r_tilde0", an.r_tilde0},
                             {"r_tilde1", an.r_tilde1},
                             {"r1", an.r1}};
  Json blocks = Json::array();
  for (const kyfan::BlockInfo& b : an.blocks) {
    Json jb;
    jb["first"] = b.idx.first + 1;  // reports are 1-based
    jb["last"] = b.idx.last + 1;
    jb["region"] = region_name(b.region);
    jb["sigma_bar_value"] = b.nu_bar;
    jb["u_bar_value"] = b.mu_bar;
    jb["zero_block"] = b.is_zero_block;
    blocks.push_back(jb);
  }
  a["blocks"] = blocks;
  a["sigma"] = kyfan::vector_to_json(an.svd.sigma);
  a["sigma_bar"] = kyfan::vector_to_json(an.sigma_bar);
  a["u_bar"] = kyfan::vector_to_json(an.u_bar);
  a["sigma_k_bar"] = an.sigma_k_bar;
  a["dual_norm_s"] = an.dual_norm_s;
  a["nuclear_norm_s"] = an.nuclear_norm_s;
  a["nuclear_eq_k"] = an.nuclear_eq_k;
  a["dual_norm_lt_1"] = an.dual_norm_lt_1;
  return a;
}

Json cone_report_json(const kyfan::ConeReport& rep) {
  Json out;
  out["member"] = rep.member;
  out["route"] = rep.route;
  Json conds = Json::array();
  for (const kyfan::ConeCondition& c : rep.conditions) {
    conds.push_back(Json{{"name", c.name},
                         {"residual", c.residual},
                         {"threshold", c.threshold},
                         {"ok", c.residual <= c.threshold}});
  }
  out["conditions"] = conds;
  return out;
}

Json sigma_result_json(const kyfan::SigmaTermResult& r) {
  return Json{{"omega_route", r.value_omega_route},
              {"quadratic_route", r.value_quadratic_route},
              {"route_gap", r.route_gap},
              {"zero_conditions_hold", r.equality_conditions_hold}};
}

struct Options {
  std::string x_path, s_path, h_path, w_path;
  std::string out_prefix = "instance";
  std::string profile = "generic";
  std::string cone_kind;
  std::vector<std::string> basis_paths;
  int k = 1;
  int m = 4, n = 5;
  double tau = 0.0;
  double tol = -1.0;        // < 0: use library defaults
  double group_tol = -1.0;  // < 0: automatic
  std::uint64_t seed = 0;
};

double pick(double user_value, double fallback) {
  return user_value > 0 ? user_value : fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational analysis of the Ky Fan k-norm"};
  app.set_help_flag("--help", "print usage");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kyfan::version));

  Options opt;
  bool tau_given = false, seed_given = false;

  auto add_common = [&](CLI::App* c, bool need_x, bool need_s, bool need_h,
                        bool need_w) {
    c->set_help_flag("--help", "print usage");
    if (need_x) c->add_option("--x", opt.x_path, "matrix file X")->required();
    if (need_s) c->add_option("--s", opt.s_path, "matrix file S")->required();
    if (need_h)
      c->add_option("--h", opt.h_path, "direction matrix file H")->required();
    if (need_w)
      c->add_option("--w", opt.w_path, "second direction matrix file W")
          ->required();
    c->add_option("--k", opt.k, "norm parameter k")->required();
    c->add_option("--tol", opt.tol, "residual tolerance");
    c->add_option("--group-tol", opt.group_tol,
                  "singular-value grouping tolerance");
  };

  CLI::App* c_norm = app.add_subcommand("norm", "Ky Fan k-norm of X");
  add_common(c_norm, true, false, false, false);

  CLI::App* c_dual = app.add_subcommand("dualnorm", "dual norm of X");
  add_common(c_dual, true, false, false, false);

  CLI::App* c_prox =
      app.add_subcommand("prox", "Moreau proximal pair of X (unit parameter)");
  add_common(c_prox, true, false, false, false);

  CLI::App* c_ge = app.add_subcommand(
      "ge-analyze", "validate a solution pair and derive its index taxonomy");
  add_common(c_ge, true, true, false, false);

  CLI::App* c_sc = app.add_subcommand(
      "strict-comp", "strict complementarity of a validated pair");
  add_common(c_sc, true, true, false, false);

  CLI::App* c_nd = app.add_subcommand(
      "nondegen", "nondegeneracy of a validated pair against a range basis");
  add_common(c_nd, true, true, false, false);
  c_nd->add_option("--basis", opt.basis_paths,
                   "matrix files spanning the constraint-derivative range")
      ->expected(-1);

  CLI::App* c_dd1 = app.add_subcommand(
      "dd1", "first-order directional derivatives at X along H");
  add_common(c_dd1, true, false, true, false);

  CLI::App* c_dd2 = app.add_subcommand(
      "dd2", "second-order directional derivatives at X along (H, W)");
  add_common(c_dd2, true, false, true, true);

  CLI::App* c_cone =
      app.add_subcommand("cone", "cone membership of a direction H");
  add_common(c_cone, true, true, true, false);
  c_cone
      ->add_option("--cone-kind", opt.cone_kind,
                   "tangent|lin|lin-dual|critical|critical-aff|"
                   "critical-dual|critical-dual-aff")
      ->required();
  c_cone->add_option("--tau", opt.tau, "epigraph coordinate (tangent cone)")
      ->trigger_on_parse()
      ->each([&](const std::string&) { tau_given = true; });

  CLI::App* c_sig = app.add_subcommand(
      "sigma-term", "Upsilon functions and support of the second-order set");
  add_common(c_sig, true, true, true, false);

  CLI::App* c_ver = app.add_subcommand(
      "verify", "full oracle battery on a validated pair");
  add_common(c_ver, true, true, false, false);
  c_ver->add_option("--seed", opt.seed, "oracle seed")
      ->trigger_on_parse()
      ->each([&](const std::string&) { seed_given = true; });

  CLI::App* c_gen = app.add_subcommand(
      "gen", "generate a random valid solution pair and write it to files");
  c_gen->set_help_flag("--help", "print usage");
  c_gen->add_option("--m", opt.m, "row count")->required();
  c_gen->add_option("--n", opt.n, "column count")->required();
  c_gen->add_option("--k", opt.k, "norm parameter k")->required();
  c_gen->add_option("--profile", opt.profile,
                    "generic|clustered|rank_deficient|zero_sigma_k|boundary_u");
  c_gen->add_option("--seed", opt.seed, "generator seed");
  c_gen->add_option("--out", opt.out_prefix, "output path prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  Json r = make_report(cmd);

  try {
    auto load = [&](const std::string& path, const char* key) {
      r["inputs"][key] = path;
      return kyfan::read_matrix_file(path);
    };
    r["inputs"]["k"] = opt.k;

    if (app.got_subcommand(c_norm) || app.got_subcommand(c_dual)) {
      const Matrix x = load(opt.x_path, "x");
      const double value = app.got_subcommand(c_norm)
                               ? kyfan::kyfan_norm(x, opt.k)
                               : kyfan::dual_kyfan_norm(x, opt.k);
      r["outputs"]["value"] = value;
      r["verdicts"]["ok"] = true;
      emit(r);
      return 0;
    }

    if (app.got_subcommand(c_prox)) {
      const Matrix x = load(opt.x_path, "x");
      const kyfan::ProxPair pp =
          kyfan::matrix_prox_pair(x, opt.k, opt.group_tol);
      r["outputs"]["prox_theta"] = kyfan::matrix_to_json(pp.prox_theta);
      r["outputs"]["prox_theta_star"] =
          kyfan::matrix_to_json(pp.prox_theta_star);
      r["outputs"]["sigma_bar"] = kyfan::vector_to_json(pp.sigma_bar);
      r["outputs"]["u_bar"] = kyfan::vector_to_json(pp.u_bar);
      const double moreau =
          (pp.prox_theta + pp.prox_theta_star - x).cwiseAbs().maxCoeff();
      r["residuals"]["moreau"] = moreau;
      r["verdicts"]["ok"] = moreau <= kyfan::tol::moreau;
      emit(r);
      return moreau <= kyfan::tol::moreau ? 0 : 1;
    }

    if (app.got_subcommand(c_dd1)) {
      const Matrix x = load(opt.x_path, "x");
      const Matrix h = load(opt.h_path, "h");
      const kyfan::OrderedSvd svd = kyfan::ordered_svd(x, opt.group_tol);
      const kyfan::Vector sd = kyfan::sigma_dd1(svd, h);
      r["outputs"]["sigma_dd1"] = kyfan::vector_to_json(sd);
      r["outputs"]["theta_dd1"] = sd.head(opt.k).sum();
      r["verdicts"]["ok"] = true;
      emit(r);
      return 0;
    }

    if (app.got_subcommand(c_dd2)) {
      const Matrix x = load(opt.x_path, "x");
      const Matrix h = load(opt.h_path, "h");
      const Matrix w = load(opt.w_path, "w");
      const kyfan::OrderedSvd svd = kyfan::ordered_svd(x, opt.group_tol);
      if (opt.k < 1 || opt.k > svd.m()) {
        throw KyfanError("PARAMETER_ERROR", "k out of range");
      }
      const kyfan::Vector sd = kyfan::sigma_dd2(svd, h, w, opt.group_tol);
      r["outputs"]["sigma_dd2"] = kyfan::vector_to_json(sd);
      r["outputs"]["theta_dd2"] = sd.head(opt.k).sum();
      r["verdicts"]["ok"] = true;
      emit(r);
      return 0;
    }

    if (app.got_subcommand(c_gen)) {
      r["inputs"]["m"] = opt.m;
      r["inputs"]["n"] = opt.n;
      r["inputs"]["profile"] = opt.profile;
      r["seed"] = opt.seed;
      const kyfan::GeInstance inst = kyfan::random_ge_instance(
          opt.m, opt.n, opt.k, opt.profile, opt.seed);
      const std::string xp = opt.out_prefix + "_x.txt";
      const std::string sp = opt.out_prefix + "_s.txt";
      kyfan::write_matrix_file(xp, inst.x_bar);
      kyfan::write_matrix_file(sp, inst.s_bar);
      r["outputs"]["x_path"] = xp;
      r["outputs"]["s_path"] = sp;
      r["outputs"]["analysis"] = analysis_json(inst.analysis);
      r["verdicts"]["ok"] = true;
      emit(r);
      return 0;
    }

    // Remaining subcommands analyze a solution pair.
    const Matrix x = load(opt.x_path, "x");
    const Matrix s = load(opt.s_path, "s");
    const GeAnalysis an = kyfan::analyze_ge(
        x, s, opt.k, pick(opt.tol, kyfan::tol::ge_default),
        kyfan::tol::tol_class, opt.group_tol);

    if (app.got_subcommand(c_ge)) {
      const kyfan::DualityCheck dc =
          kyfan::check_subgradient_duality(x, s, opt.k);
      r["outputs"]["analysis"] = analysis_json(an);
      r["residuals"]["dual_norm"] = dc.dual_norm_residual;
      r["residuals"]["pairing"] = dc.pairing_residual;
      r["verdicts"]["valid_pair"] = true;
      emit(r);
      return 0;
    }

    if (app.got_subcommand(c_sc)) {
      const kyfan::StrictCompResult sc = kyfan::check_strict_complementarity(
          an, pick(opt.tol, kyfan::tol::tol_class));
      r["outputs"]["margin"] = sc.margin;
      r["outputs"]["case"] = analysis_json(an)["case"];
      r["verdicts"]["strict_complementarity"] = sc.strict;
      emit(r);
      return sc.strict ? 0 : 1;
    }

    if (app.got_subcommand(c_nd)) {
      kyfan::LinearMapRange range;
      Json basis_paths = Json::array();
      for (const std::string& p : opt.basis_paths) {
        basis_paths.push_back(p);
        range.basis.push_back(kyfan::read_matrix_file(p));
      }
      r["inputs"]["basis"] = basis_paths;
      const bool nd = kyfan::check_nondegeneracy(
          an, range, pick(opt.tol, kyfan::tol::ge_default));
      r["outputs"]["tlin_dimension"] =
          static_cast<int>(kyfan::tlin_basis(an).size());
      r["verdicts"]["nondegenerate"] = nd;
      emit(r);
      return nd ? 0 : 1;
    }

    if (app.got_subcommand(c_cone)) {
      const Matrix h = load(opt.h_path, "h");
      const double tol = pick(opt.tol, kyfan::tol::cone);
      kyfan::ConeReport rep;
      if (opt.cone_kind == "tangent") {
        if (!tau_given) {
          throw KyfanError("PARAMETER_ERROR",
                           "--tau is required for --cone-kind tangent");
        }
        r["inputs"]["tau"] = opt.tau;
        rep = kyfan::tangent_cone_contains(an, h, opt.tau, tol);
      } else if (opt.cone_kind == "lin") {
        rep = kyfan::lineality_primal_contains(an, h, tol);
      } else if (opt.cone_kind == "lin-dual") {
        rep = kyfan::lineality_dual_contains(an, h, tol);
      } else if (opt.cone_kind == "critical") {
        rep = kyfan::critical_cone_primal_contains(an, h, tol);
      } else if (opt.cone_kind == "critical-aff") {
        rep = kyfan::critical_cone_primal_aff_contains(an, h, tol);
      } else if (opt.cone_kind == "critical-dual") {
        rep = kyfan::critical_cone_dual_contains(an, h, tol);
      } else if (opt.cone_kind == "critical-dual-aff") {
        rep = kyfan::critical_cone_dual_aff_contains(an, h, tol);
      } else {
        throw KyfanError("PARAMETER_ERROR",
                         "unknown --cone-kind: " + opt.cone_kind);
      }
      r["inputs"]["cone_kind"] = opt.cone_kind;
      r["outputs"] = cone_report_json(rep);
      double worst = 0;
      for (const kyfan::ConeCondition& c : rep.conditions)
        worst = std::max(worst, c.residual - c.threshold);
      r["residuals"]["worst_violation"] = std::max(worst, 0.0);
      r["verdicts"]["member"] = rep.member;
      emit(r);
      return rep.member ? 0 : 1;
    }

    if (app.got_subcommand(c_sig)) {
      const Matrix h = load(opt.h_path, "h");
      const kyfan::SigmaTermResult up = kyfan::upsilon_primal(an, h);
      const kyfan::SigmaTermResult ud = kyfan::upsilon_dual(an, h);
      const kyfan::SupportT2Result st = kyfan::support_t2(an, h);
      r["outputs"]["upsilon"] = sigma_result_json(up);
      r["outputs"]["upsilon_dual"] = sigma_result_json(ud);
      Json sj;
      sj["finite"] = st.finite;
      if (st.finite) {
        sj["value"] = st.value;
      } else {
        sj["value"] = nullptr;
        sj["flag"] = st.flag;
      }
      r["outputs"]["support_t2"] = sj;
      r["residuals"]["upsilon_route_gap"] = up.route_gap;
      r["residuals"]["upsilon_dual_route_gap"] = ud.route_gap;
      r["verdicts"]["routes_agree"] = true;
      emit(r);
      return 0;
    }

    if (app.got_subcommand(c_ver)) {
      kyfan::OracleConfig cfg;
      cfg.seed = seed_given ? opt.seed : 0;
      r["seed"] = cfg.seed;
      const std::vector<kyfan::VerifyCheck> checks = kyfan::run_verify(an, cfg);
      Json arr = Json::array();
      bool all = true;
      for (const kyfan::VerifyCheck& c : checks) {
        arr.push_back(Json{{"name", c.name},
                           {"pass", c.pass},
                           {"residual", c.residual},
                           {"threshold", c.threshold}});
        all = all && c.pass;
      }
      r["outputs"]["checks"] = arr;
      r["verdicts"]["all_passed"] = all;
      emit(r);
      return all ? 0 : 1;
    }

    throw KyfanError("PARAMETER_ERROR", "no subcommand dispatched");
  } catch (const KyfanError& e) {
    r["error"] = Json{{"code", e.code()}, {"message", e.what()}};
    r["verdicts"]["ok"] = false;
    emit(r);
    return exit_code_for(e);
  } catch (const std::exception& e) {
    r["error"] = Json{{"code", "INTERNAL_ERROR"}, {"message", e.what()}};
    r["verdicts"]["ok"] = false;
    emit(r);
    return 2;
  }
}
