/// @file twistorcli.cpp
/// @brief Command-line front end: surface building, verification suites,
///        ideal and branch-polynomial emission, and the admissible-ĝ search.
///        Exit codes: 0 all-pass, 1 verification failure, 2 input error,
///        3 search exhausted.
#include "twistor/branch.hpp"
#include "twistor/lattice.hpp"
#include "twistor/linsys.hpp"
#include "twistor/models.hpp"
#include "twistor/params.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace twistor;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInputError = 2;
constexpr int kExitSearchExhausted = 3;

/// Deterministic fallback parameters for verification when no file is given:
/// lambdas 1..n-1, a fixed pseudo-random ĝ of degree n-1 and linear form g.
ModelParams default_params(int n) {
  ModelParams p;
  p.n = n;
  p.lambdas = default_lambdas(n);
  std::mt19937 rng(20240u + static_cast<unsigned>(n));
  p.g_hat = random_g_hat(n, rng);
  for (int i = 0; i < n + 2; ++i) p.g_linear.push_back(random_rational(rng));
  p.validate();
  return p;
}

int report_exit(const VerificationReport& rep, bool json) {
  if (json)
    std::cout << rep.to_json().dump(2) << "\n";
  else
    std::cout << rep.to_text();
  return rep.all_pass() ? kExitOk : kExitVerifyFail;
}

int cmd_build_surface(int n, bool json) {
  const SurfaceS s = build_surface_S(n);
  const Lattice& L = s.lattice();
  const VerificationReport rep = validate_configuration(s);
  if (json) {
    nlohmann::json curves = nlohmann::json::object();
    for (const auto& [name, cls] : L.curves) curves[name] = cls.to_string();
    nlohmann::json j = rep.to_json();
    j["n"] = n;
    j["rank"] = L.rank();
    j["K"] = L.canonical.to_string();
    j["K_square"] = L.k_squared().str();
    j["curves"] = curves;
    j["failures"] = rep.failures();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "surface S, n=" << n << ", rank " << L.rank() << ", K=" << L.canonical.to_string()
              << ", K^2=" << L.k_squared() << "\n";
    std::cout << "basis:";
    for (const auto& b : L.basis) std::cout << " " << b;
    std::cout << "\ncurves:\n";
    for (const auto& [name, cls] : L.curves)
      std::cout << "  " << name << " = " << cls.to_string()
                << "  self=" << L.self_intersection(cls) << "\n";
    std::cout << "intersection matrix of tracked curves:\n";
    for (const auto& [ni, ci] : L.curves) {
      std::cout << "  " << ni << ":";
      for (const auto& [nj, cj] : L.curves) std::cout << " " << L.intersect(ci, cj);
      std::cout << "\n";
    }
    std::cout << rep.to_text();
  }
  return rep.all_pass() ? kExitOk : kExitVerifyFail;
}

int cmd_emit_ideal(const std::string& params_path, const std::string& which, bool json) {
  const ModelParams p = load_params_file(params_path);
  Ideal ideal;
  if (which == "minitwistor") {
    ideal = minitwistor_ideal(p);
  } else if (which == "model-x") {
    ideal = model_X_ideal(p);
  } else if (which == "fiber") {
    ideal = fiber_model(p);
  } else if (which == "branch") {
    ideal.variables = {"eta1", "eta2", "lambda"};
    ideal.generators.push_back({"branch1", branch_polynomial(p)});
  } else {
    throw std::invalid_argument("unknown ideal selector: " + which);
  }
  if (json)
    std::cout << ideal.to_json().dump(2) << "\n";
  else
    std::cout << ideal.to_text();
  return kExitOk;
}

VerificationReport verify_suite(int n, const ModelParams& p, bool deep) {
  VerificationReport rep;
  // Lattice suites.
  rep.merge(validate_configuration(build_surface_S(n)));
  rep.merge(check_C0_numbers(n));
  // Linear systems.
  rep.merge(verify_nontrivial_member(n));
  rep.merge(verify_Y_classes(n));
  {
    const auto m2 = movable_part_numbers(n, n - 2);
    const auto m1 = movable_part_numbers(n, n - 1);
    rep.check("movable.selfint.m.n-2", Int(2), m2.selfint);
    rep.check("movable.selfint.m.n-1", Int(4), m1.selfint);
    rep.check_bool("movable.nef.m.n-2", m2.nef_on_cycle);
    rep.check_bool("movable.nef.m.n-1", m1.nef_on_cycle);
  }
  if (n >= 4) rep.merge(verify_elimination_ledger(n));
  // Models.
  rep.check_bool("mt.identity", verify_mt_identity(p));
  {
    const auto d = derive_branch(p);
    rep.check_bool("branch.derivation.imaginary.zero", d.imaginary_zero);
    rep.check_bool("branch.derivation.matches", d.matches_branch);
  }
  rep.merge(conic_bundle_form(n).checks);
  if (deep && (n == 3 || n == 4)) {
    for (unsigned s = 1; s <= 5; ++s)
      rep.check("degree.slice." + std::to_string(s), Int(2 * (n - 1)),
                Int(degree_by_slicing(p, 977u * s + static_cast<unsigned>(n))));
  }
  // Branch analysis.
  rep.check("ruled.base.genus", Int((n - 1) / 2), Int(ruled_base_genus(p)));
  rep.merge(nonreduced_fibers(p).checks);
  if (n >= 4) {
    const auto inf = infinity_chart(p);
    rep.check("infinity.exponent", Int(3 * n - 8), Int(inf.a_type_exponent));
    rep.merge(inf.checks);
  }
  rep.check("moduli.dimension", Int(n), Int(moduli_dimension(n).dimension));
  return rep;
}

int cmd_find_admissible(int n, const std::vector<std::string>& lambda_strs, int seeds,
                        double tol, bool json) {
  std::vector<Rational> lambdas;
  for (const auto& s : lambda_strs) lambdas.push_back(parse_rational(s));
  {
    ModelParams check;
    check.n = n;
    check.lambdas = lambdas;
    check.validate();
  }
  nlohmann::json out = nlohmann::json::array();
  bool any = false;
  for (int seed = 1; seed <= seeds; ++seed) {
    const auto r = find_admissible_g(n, lambdas, static_cast<unsigned>(seed), tol);
    if (r.outcome != AdmissibleOutcome::Admissible) continue;
    any = true;
    std::vector<std::string> coeffs;
    for (const auto& c : r.g_hat.coefficients()) coeffs.push_back(rational_to_string(c));
    if (json) {
      out.push_back({{"seed", seed},
                     {"g_hat", coeffs},
                     {"certificate", r.analysis.to_json()}});
    } else {
      std::cout << "seed " << seed << ": g_hat = " << r.g_hat.to_text("lambda")
                << "  genus=" << r.analysis.genus << " split="
                << (r.analysis.split ? "true" : "false") << "\n";
    }
  }
  if (json) std::cout << out.dump(2) << "\n";
  return any ? kExitOk : kExitSearchExhausted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification toolkit for Moishezon twistor-space models"};
  app.require_subcommand(1);

  int n = 0;
  bool json = false;
  std::string params_path, which;
  bool deep = false;
  std::vector<std::string> lambda_strs;
  int seeds = 16;
  double tol = 1e-9;

  auto* build = app.add_subcommand("build-surface", "build S and validate the configuration");
  build->add_option("--n", n, "number of blow-up pairs")->required();
  build->add_flag("--json", json, "JSON output");

  auto* emit = app.add_subcommand("emit-ideal", "emit a model ideal");
  emit->add_option("--params", params_path, "params JSON file")->required();
  emit->add_option("--which", which, "minitwistor|model-x|fiber|branch")->required();
  emit->add_flag("--json", json, "JSON output");

  auto* verify = app.add_subcommand("verify", "run the verification suites");
  verify->add_option("--n", n, "number of blow-up pairs")->required();
  verify->add_option("--params", params_path, "params JSON file (optional)");
  verify->add_flag("--deep", deep, "include the slicing degree oracle (n <= 4)");
  verify->add_flag("--json", json, "JSON output");

  auto* find = app.add_subcommand("find-admissible", "search for admissible g_hat");
  find->add_option("--n", n, "number of blow-up pairs")->required();
  find->add_option("--lambdas", lambda_strs, "lambda_3..lambda_{n+1} as p/q strings")->required();
  find->add_option("--seeds", seeds, "number of seeds to try");
  find->add_option("--tol", tol, "Newton residual tolerance");
  find->add_flag("--json", json, "JSON output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      if (n < 3) throw std::invalid_argument("--n must be >= 3");
      return cmd_build_surface(n, json);
    }
    if (emit->parsed()) return cmd_emit_ideal(params_path, which, json);
    if (verify->parsed()) {
      if (n < 3) throw std::invalid_argument("--n must be >= 3");
      ModelParams p;
      if (!params_path.empty()) {
        p = load_params_file(params_path);
        if (p.n != n) throw std::invalid_argument("--n disagrees with params file");
        if (static_cast<int>(p.g_linear.size()) != n + 2) {
          std::mt19937 rng(20240u + static_cast<unsigned>(n));
          for (int i = 0; i < n + 2; ++i) p.g_linear.push_back(random_rational(rng));
        }
        if (p.g_hat.is_zero()) {
          std::mt19937 rng(4096u + static_cast<unsigned>(n));
          p.g_hat = random_g_hat(n, rng);
        }
      } else {
        p = default_params(n);
      }
      return report_exit(verify_suite(n, p, deep), json);
    }
    if (find->parsed()) {
      if (n < 3) throw std::invalid_argument("--n must be >= 3");
      return cmd_find_admissible(n, lambda_strs, seeds, tol, json);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  return kExitInputError;
}
