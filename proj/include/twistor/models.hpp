/// @file models.hpp
/// @brief Explicit projective models: scroll and minitwistor relations, the
///        model-X ideal, the fiberwise equations, the conic-bundle payload,
///        the projection f, the branch-divisor derivation over Q(i), point
///        sampling, and the slicing degree oracle.
#ifndef TWISTOR_MODELS_HPP
#define TWISTOR_MODELS_HPP

#include "twistor/lattice.hpp"
#include "twistor/multipoly.hpp"
#include "twistor/params.hpp"
#include "twistor/report.hpp"
#include "twistor/unipoly.hpp"

#include <json.hpp>

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistor {

/// A generator of an ideal together with its claim tag.
struct IdealGenerator {
  std::string tag;
  MultiPoly poly;
};

/// Ideal presentation: an ambient variable list and tagged generators, all
/// expressed over the full ambient variable list.
struct Ideal {
  std::vector<std::string> variables;
  std::vector<IdealGenerator> generators;

  nlohmann::json to_json() const {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : generators) {
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& [e, c] : g.poly.terms()) {
        nlohmann::json exps = nlohmann::json::array();
        for (unsigned v : e) exps.push_back(v);
        terms.push_back({{"coeff", rational_to_string(c)}, {"exponents", exps}});
      }
      gens.push_back({{"tag", g.tag}, {"terms", terms}});
    }
    return {{"variables", variables}, {"generators", gens}};
  }

  /// One line per generator: "tag: canonical-polynomial-text".
  std::string to_text() const {
    std::string out;
    for (const auto& g : generators) out += g.tag + ": " + g.poly.to_text() + "\n";
    return out;
  }
};

/// Variable list z1..zm.
inline std::vector<std::string> z_vars(int m) {
  std::vector<std::string> v;
  for (int i = 1; i <= m; ++i) v.push_back("z" + std::to_string(i));
  return v;
}

/// Elementary symmetric polynomials sigma_1..sigma_{n-1} of the lambdas.
inline std::vector<Rational> elementary_symmetric(const std::vector<Rational>& lambdas) {
  std::vector<Rational> sigma(lambdas.size() + 1, Rational(0));
  sigma[0] = 1;
  std::size_t used = 0;
  for (const auto& l : lambdas) {
    ++used;
    for (std::size_t k = used; k >= 1; --k) sigma[k] += l * sigma[k - 1];
  }
  return std::vector<Rational>(sigma.begin() + 1, sigma.end());
}

/// The 2x2 minors z_i z_{j+1} - z_{i+1} z_j (1 <= i < j <= n-1) cutting out
/// the rational normal scroll, over the ambient z1..z_{ambient}.
inline Ideal scroll_relations(int n, int ambient = -1) {
  if (n < 3) throw std::invalid_argument("scroll_relations requires n >= 3");
  if (ambient < 0) ambient = n + 2;
  Ideal ideal;
  ideal.variables = z_vars(ambient);
  const auto z = [&](int i) { return MultiPoly::variable(ideal.variables, "z" + std::to_string(i)); };
  for (int i = 1; i <= n - 1; ++i)
    for (int j = i + 1; j <= n - 1; ++j)
      ideal.generators.push_back(
          {"scroll(" + std::to_string(i) + "," + std::to_string(j) + ")",
           z(i) * z(j + 1) - z(i + 1) * z(j)});
  return ideal;
}

/// The bracket z_n - sigma_1 z_{n-1} + sigma_2 z_{n-2} - ... +
/// (-1)^{n-1} sigma_{n-1} z_1, over the given ambient variables.
inline MultiPoly sigma_bracket(const ModelParams& p, const std::vector<std::string>& vars) {
  const auto sigma = elementary_symmetric(p.lambdas);
  const auto z = [&](int i) { return MultiPoly::variable(vars, "z" + std::to_string(i)); };
  MultiPoly bracket = z(p.n);
  Rational sign = -1;
  for (int k = 1; k <= p.n - 1; ++k) {
    bracket = bracket + (sign * sigma[static_cast<std::size_t>(k - 1)]) * z(p.n - k);
    sign = -sign;
  }
  return bracket;
}

/// The quadric z_{n+1}z_{n+2} - z_2 * bracket cutting the minitwistor
/// surface out of the scroll.
inline MultiPoly minitwistor_quadric(const ModelParams& p) {
  const auto vars = z_vars(p.n + 2);
  const auto z = [&](int i) { return MultiPoly::variable(vars, "z" + std::to_string(i)); };
  return z(p.n + 1) * z(p.n + 2) - z(2) * sigma_bracket(p, vars);
}

/// Scroll relations plus the minitwistor quadric (tag "nt3").
inline Ideal minitwistor_ideal(const ModelParams& p) {
  Ideal ideal = scroll_relations(p.n);
  ideal.generators.push_back({"nt3", minitwistor_quadric(p)});
  return ideal;
}

/// Exact symbolic check of the product decomposition: substituting
/// z_k -> y1^{n-k} y2^{k-1} into z_2 * bracket reproduces
/// y1^{n-2} y2 prod_{i=3}^{n+1} (y2 - lambda_i y1).
inline bool verify_mt_identity(const ModelParams& p) {
  const std::vector<std::string> yvars = {"y1", "y2"};
  const MultiPoly y1 = MultiPoly::variable(yvars, "y1");
  const MultiPoly y2 = MultiPoly::variable(yvars, "y2");
  MultiPoly lhs = y1.pow(static_cast<unsigned>(p.n - 2)) * y2;
  for (const auto& l : p.lambdas) lhs = lhs * (y2 - l * y1);

  const auto vars = z_vars(p.n + 2);
  std::map<std::string, MultiPoly> bind;
  for (int k = 1; k <= p.n; ++k)
    bind["z" + std::to_string(k)] =
        y1.pow(static_cast<unsigned>(p.n - k)) * y2.pow(static_cast<unsigned>(k - 1));
  const MultiPoly z2 = MultiPoly::variable(vars, "z2");
  const MultiPoly rhs = (z2 * sigma_bracket(p, vars)).substitute(bind);
  return lhs == rhs;
}

/// The linear form g = sum g_i z_i over z1..z_{n+2}, lifted to the given
/// ambient variable list.
inline MultiPoly linear_form_g(const ModelParams& p, const std::vector<std::string>& vars) {
  if (static_cast<int>(p.g_linear.size()) != p.n + 2)
    throw std::invalid_argument("linear_form_g: params carry no g_linear coefficients");
  MultiPoly g(vars);
  for (int i = 1; i <= p.n + 2; ++i)
    g = g + p.g_linear[static_cast<std::size_t>(i - 1)] *
                MultiPoly::variable(vars, "z" + std::to_string(i));
  return g;
}

/// The model-X ideal in CP^{n+5}: scroll minors plus the printed quadrics
/// nt12, nt13, nt14 (kept verbatim with its z1 factor) and nt15.
inline Ideal model_X_ideal(const ModelParams& p) {
  const int n = p.n;
  Ideal ideal = scroll_relations(n, n + 6);
  const auto& vars = ideal.variables;
  const auto z = [&](int i) { return MultiPoly::variable(vars, "z" + std::to_string(i)); };
  ideal.generators.push_back({"nt12", z(1) * z(n + 5) - z(2) * z(n + 3)});
  ideal.generators.push_back({"nt13", z(1) * z(n + 6) - z(2) * z(n + 4)});
  ideal.generators.push_back({"nt14", z(n + 1) * z(n + 2) - z(1) * sigma_bracket(p, vars)});
  ideal.generators.push_back({"nt15", z(n + 3) * z(n + 4) - z(1) * linear_form_g(p, vars)});
  return ideal;
}

/// Fiberwise equations of the strict transform over the lambda-line:
/// nt16-nt19 in the variables (lambda, xi1..xi6).
inline Ideal fiber_model(const ModelParams& p) {
  Ideal ideal;
  ideal.variables = {"lambda", "xi1", "xi2", "xi3", "xi4", "xi5", "xi6"};
  const auto& vars = ideal.variables;
  const MultiPoly lam = MultiPoly::variable(vars, "lambda");
  const auto xi = [&](int i) { return MultiPoly::variable(vars, "xi" + std::to_string(i)); };
  ideal.generators.push_back({"nt16", xi(5) - lam * xi(3)});
  ideal.generators.push_back({"nt17", xi(6) - lam * xi(4)});
  MultiPoly q = lam;
  for (const auto& l : p.lambdas) q = q * (lam - MultiPoly::constant(vars, l));
  ideal.generators.push_back({"nt18", xi(1) * xi(2) - q});
  // nt19: xi3 xi4 = g(1, lambda, ..., lambda^{n-1}, xi1, xi2).
  if (static_cast<int>(p.g_linear.size()) != p.n + 2)
    throw std::invalid_argument("fiber_model: params carry no g_linear coefficients");
  MultiPoly g(vars);
  for (int k = 1; k <= p.n; ++k)
    g = g + p.g_linear[static_cast<std::size_t>(k - 1)] * lam.pow(static_cast<unsigned>(k - 1));
  g = g + p.g_linear[static_cast<std::size_t>(p.n)] * xi(1);
  g = g + p.g_linear[static_cast<std::size_t>(p.n + 1)] * xi(2);
  ideal.generators.push_back({"nt19", xi(3) * xi(4) - g});
  return ideal;
}

/// The conic-bundle zero-divisor payload: the class of C0 and the list of
/// curves making up the discriminant contribution (the two sections plus
/// all components of the fibers over infinity and over lambda_4..lambda_{n+1};
/// the fibers over lambda_2 and lambda_3 are excluded).
struct ConicBundleForm {
  DivisorClass p0;
  std::vector<std::string> p1_components;
  VerificationReport checks;
};

inline ConicBundleForm conic_bundle_form(int n) {
  const SurfaceT t = build_minitwistor_T(n);
  const Lattice& L = t.lat;
  ConicBundleForm out;
  out.p0 = L.curve("C0");
  out.p1_components = {"Gamma", "Gammab"};
  // Fiber over infinity: the full chain.
  for (const auto& name : t.fibers[0]) out.p1_components.push_back(name);
  // Fibers over lambda_i, 4 <= i <= n+1 (t.fibers[1], t.fibers[2] are the
  // excluded fibers over lambda_2 and lambda_3).
  for (std::size_t k = 3; k < t.fibers.size(); ++k)
    for (const auto& name : t.fibers[k]) out.p1_components.push_back(name);

  DivisorClass p1(L.rank());
  for (const auto& name : out.p1_components) p1 = p1 + L.curve(name);
  out.checks.check("cbdle.P0.f", Int(2), L.intersect(out.p0, L.curve("f")));
  out.checks.check("cbdle.P1.f", Int(2), L.intersect(p1, L.curve("f")));
  out.checks.check("cbdle.total.degree", Int(4), L.intersect(out.p0 + p1, L.curve("f")));
  out.checks.check("cbdle.P1.count", Int(2 + (n - 1) + 2 * (n - 2)),
                   Int(out.p1_components.size()));
  return out;
}

/// The projection f: drops (z_n, z_{n+1}, z_{n+2}, z_{n+5}, z_{n+6}),
/// keeping (z_1..z_{n-1}, z_{n+3}, z_{n+4}).
inline std::vector<Rational> project_f(const std::vector<Rational>& point) {
  const int n = static_cast<int>(point.size()) - 6;
  if (n < 3) throw std::invalid_argument("project_f: point must have n+6 >= 9 coordinates");
  std::vector<Rational> out;
  for (int i = 0; i < n - 1; ++i) out.push_back(point[static_cast<std::size_t>(i)]);
  out.push_back(point[static_cast<std::size_t>(n + 2)]);
  out.push_back(point[static_cast<std::size_t>(n + 3)]);
  return out;
}

/// Polynomial with coefficients in Q(i), stored as a real/imaginary pair.
struct GaussPoly {
  MultiPoly re, im;

  static GaussPoly from_real(const MultiPoly& p) { return {p, MultiPoly(p.variables())}; }
  static GaussPoly scalar(const GaussRational& c, const std::vector<std::string>& vars) {
    return {MultiPoly::constant(vars, c.re), MultiPoly::constant(vars, c.im)};
  }
  friend GaussPoly operator+(const GaussPoly& a, const GaussPoly& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussPoly operator-(const GaussPoly& a, const GaussPoly& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussPoly operator*(const GaussPoly& a, const GaussPoly& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  bool imaginary_zero() const { return im.is_zero(); }
};

/// Outcome of the branch-divisor derivation.
struct BranchDerivation {
  MultiPoly discriminant;     ///< real part of the eliminated quadratic's discriminant
  bool imaginary_zero = false;  ///< the Q(i) computation came out real
  bool matches_branch = false;  ///< equals (eta1 eta2 - ghat)^2 - q exactly
};

/// The branch polynomial (eta1 eta2 - ghat(lambda))^2 - q(lambda) in
/// variables (eta1, eta2, lambda).
inline MultiPoly branch_polynomial(const ModelParams& p) {
  const std::vector<std::string> vars = {"eta1", "eta2", "lambda"};
  const MultiPoly e1 = MultiPoly::variable(vars, "eta1");
  const MultiPoly e2 = MultiPoly::variable(vars, "eta2");
  const MultiPoly lam = MultiPoly::variable(vars, "lambda");
  const MultiPoly w = e1 * e2 - p.g_hat.to_multi("lambda").reindexed(vars);
  MultiPoly q = lam;
  for (const auto& l : p.lambdas) q = q * (lam - MultiPoly::constant(vars, l));
  return w * w - q;
}

/// Performs the elimination of (xi1, xi2): substitutes
/// xi2 = cbar^{-1}(eta1 eta2 - ghat - c xi1) into xi1 xi2 = q(lambda),
/// forms the quadratic in xi1 and returns its discriminant
/// w^2 - 4|c|^2 q, asserting the Q(i) arithmetic is real and comparing
/// with the branch polynomial (they agree exactly iff |c|^2 = 1/4).
inline BranchDerivation derive_branch(const ModelParams& p, const GaussRational* c_override = nullptr) {
  const GaussRational c = c_override ? *c_override : p.c;
  if (c.is_zero()) throw std::invalid_argument("derive_branch: c must be nonzero");
  const std::vector<std::string> vars = {"eta1", "eta2", "lambda"};
  const MultiPoly e1 = MultiPoly::variable(vars, "eta1");
  const MultiPoly e2 = MultiPoly::variable(vars, "eta2");
  const MultiPoly lam = MultiPoly::variable(vars, "lambda");
  const MultiPoly w_real = e1 * e2 - p.g_hat.to_multi("lambda").reindexed(vars);
  MultiPoly q_real = lam;
  for (const auto& l : p.lambdas) q_real = q_real * (lam - MultiPoly::constant(vars, l));

  // Quadratic from cbar * (xi1 xi2 - q) with xi2 eliminated:
  //   -c xi1^2 + w xi1 - cbar q = 0; discriminant w^2 - 4 c cbar q.
  const GaussPoly w = GaussPoly::from_real(w_real);
  const GaussPoly q = GaussPoly::from_real(q_real);
  const GaussPoly a = GaussPoly::scalar(c, vars);
  const GaussPoly abar = GaussPoly::scalar(c.conj(), vars);
  const GaussPoly four = GaussPoly::scalar(GaussRational(Rational(4), Rational(0)), vars);
  const GaussPoly disc = w * w - four * a * abar * q;

  BranchDerivation out;
  out.imaginary_zero = disc.imaginary_zero();
  out.discriminant = disc.re;
  out.matches_branch = out.imaginary_zero && (out.discriminant == w_real * w_real - q_real);
  return out;
}

/// Random points on the minitwistor surface in CP^{n+1}: z_k = lambda^{k-1},
/// z_{n+1} random nonzero, z_{n+2} chosen so the quadric holds exactly;
/// lambdas with q(lambda) = 0 are resampled.
inline std::vector<std::vector<Rational>> sample_points_on_T(const ModelParams& p, int count,
                                                             unsigned seed) {
  std::mt19937 rng(seed);
  const UniPoly q = p.q();
  std::vector<std::vector<Rational>> points;
  while (static_cast<int>(points.size()) < count) {
    const Rational lam = random_rational(rng);
    if (q.evaluate(lam) == 0) continue;
    std::vector<Rational> z(static_cast<std::size_t>(p.n + 2));
    Rational power = 1;
    for (int k = 1; k <= p.n; ++k) {
      z[static_cast<std::size_t>(k - 1)] = power;
      power *= lam;
    }
    const Rational zn1 = random_rational(rng);
    z[static_cast<std::size_t>(p.n)] = zn1;
    z[static_cast<std::size_t>(p.n + 1)] = q.evaluate(lam) / zn1;
    points.push_back(std::move(z));
  }
  return points;
}

/// Random points on the model X in CP^{n+5}, lifted consistently with the
/// printed quadrics (so nt14's z1 factor is honored on the chart z1 = 1).
inline std::vector<std::vector<Rational>> sample_points_on_X(const ModelParams& p, int count,
                                                             unsigned seed) {
  if (static_cast<int>(p.g_linear.size()) != p.n + 2)
    throw std::invalid_argument("sample_points_on_X: params carry no g_linear coefficients");
  std::mt19937 rng(seed);
  const int n = p.n;
  // Bracket polynomial prod (lambda - lambda_i) (no lambda factor: nt14).
  UniPoly bracket = UniPoly::constant(1);
  for (const auto& l : p.lambdas) bracket = bracket * UniPoly({-l, 1});
  std::vector<std::vector<Rational>> points;
  while (static_cast<int>(points.size()) < count) {
    const Rational lam = random_rational(rng);
    if (bracket.evaluate(lam) == 0) continue;
    std::vector<Rational> z(static_cast<std::size_t>(n + 6));
    Rational power = 1;
    for (int k = 1; k <= n; ++k) {
      z[static_cast<std::size_t>(k - 1)] = power;
      power *= lam;
    }
    const Rational zn1 = random_rational(rng);
    z[static_cast<std::size_t>(n)] = zn1;
    z[static_cast<std::size_t>(n + 1)] = bracket.evaluate(lam) / zn1;
    // g evaluated at the chart point, then z_{n+3} z_{n+4} = g, and the
    // nt12/nt13 relations force z_{n+5} = lambda z_{n+3}, z_{n+6} = lambda z_{n+4}.
    Rational gval = 0;
    Rational lp = 1;
    for (int k = 1; k <= n; ++k) {
      gval += p.g_linear[static_cast<std::size_t>(k - 1)] * lp;
      lp *= lam;
    }
    gval += p.g_linear[static_cast<std::size_t>(n)] * z[static_cast<std::size_t>(n)];
    gval += p.g_linear[static_cast<std::size_t>(n + 1)] * z[static_cast<std::size_t>(n + 1)];
    if (gval == 0) continue;
    const Rational zn3 = random_rational(rng);
    z[static_cast<std::size_t>(n + 2)] = zn3;
    z[static_cast<std::size_t>(n + 3)] = gval / zn3;
    z[static_cast<std::size_t>(n + 4)] = lam * z[static_cast<std::size_t>(n + 2)];
    z[static_cast<std::size_t>(n + 5)] = lam * z[static_cast<std::size_t>(n + 3)];
    points.push_back(std::move(z));
  }
  return points;
}

/// Degree of the minitwistor surface by intersecting with a random
/// codimension-2 linear slice on the chart z1 = 1 (where the scroll forces
/// z_k = lambda^{k-1}) and eliminating down to one variable.  Returns the
/// root count with multiplicity, validated by a second elimination route;
/// degenerate slices are retried.  Restricted to n in {3, 4}.
inline int degree_by_slicing(const ModelParams& p, unsigned seed) {
  if (p.n != 3 && p.n != 4)
    throw std::invalid_argument("degree_by_slicing supports only n = 3 and 4");
  std::mt19937 rng(seed);
  const int n = p.n;
  const UniPoly q = p.q();
  const std::vector<std::string> vars = {"lambda", "u", "v"};
  const MultiPoly lam = MultiPoly::variable(vars, "lambda");
  const MultiPoly u = MultiPoly::variable(vars, "u");
  const MultiPoly v = MultiPoly::variable(vars, "v");
  // Surface on the chart: u v = q(lambda).
  const MultiPoly surface = u * v - q.to_multi("lambda").reindexed(vars);

  for (int attempt = 0; attempt < 32; ++attempt) {
    // Random linear slice: a(lambda) + alpha u + alpha' v and the same with b.
    const auto random_line = [&](Rational& lin_u, Rational& lin_v) {
      MultiPoly a(vars);
      MultiPoly lp = MultiPoly::constant(vars, 1);
      for (int k = 0; k <= n - 1; ++k) {
        a = a + random_rational(rng) * lp;
        lp = lp * lam;
      }
      lin_u = random_rational(rng);
      lin_v = random_rational(rng);
      return a + lin_u * u + lin_v * v;
    };
    Rational alpha, alphap, beta, betap;
    const MultiPoly l1 = random_line(alpha, alphap);
    const MultiPoly l2 = random_line(beta, betap);
    const Rational d = alpha * betap - alphap * beta;
    if (d == 0) continue;

    // Direct route (Cramer): u = U/D, v = V/D with
    //   U = alpha' b - beta' a, V = a beta - alpha b; eliminant U V - D^2 q.
    const MultiPoly a_poly = l1 - alpha * u - alphap * v;
    const MultiPoly b_poly = l2 - beta * u - betap * v;
    const MultiPoly U = alphap * b_poly - betap * a_poly;
    const MultiPoly V = a_poly * MultiPoly::constant(vars, beta) - alpha * b_poly;
    const MultiPoly eliminant =
        U * V - (d * d) * q.to_multi("lambda").reindexed(vars);
    if (eliminant.is_zero()) continue;
    const UniPoly e_direct = UniPoly::from_multi(eliminant.reindexed({"lambda"}), "lambda");
    if (e_direct.degree() != 2 * (n - 1)) continue;  // intersection at infinity

    // Second route: iterated resultants.
    const MultiPoly r1 = resultant(l1, l2, "v");
    const MultiPoly r2 = resultant(l1, surface, "v");
    const MultiPoly elim2 = resultant(r1, r2, "u");
    if (elim2.is_zero()) continue;
    const UniPoly e_res = UniPoly::from_multi(elim2.reindexed({"lambda"}), "lambda");
    if (!(e_res.monic() == e_direct.monic())) continue;  // routes disagree: retry

    return e_direct.degree();
  }
  throw std::runtime_error("degree_by_slicing: no non-degenerate slice found");
}

}  // namespace twistor

#endif  // TWISTOR_MODELS_HPP
