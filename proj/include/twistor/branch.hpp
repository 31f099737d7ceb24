/// @file branch.hpp
/// @brief Branch-divisor analysis: hyperelliptic genus via square-free
///        decomposition, the rationality (admissibility) constraint, ruled
///        base genus, fiber degeneration, the chart at lambda = infinity
///        with its A-type certificate, moduli counting, and the
///        numeric-then-exact admissible-parameter search.
#ifndef TWISTOR_BRANCH_HPP
#define TWISTOR_BRANCH_HPP

#include "twistor/models.hpp"
#include "twistor/params.hpp"
#include "twistor/unipoly.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistor {

/// Square-free/genus data of the double cover of the lambda-line branched
/// at the roots of p (plus infinity when the odd part has odd degree).
struct BranchAnalysis {
  UniPoly p;
  int odd_part_degree = 0;
  int branch_point_count = 0;
  int genus = 0;
  bool admissible = false;
  /// All multiplicities even: the cover splits into two rational sheets.
  bool split = false;

  nlohmann::json to_json() const {
    return {{"genus", genus},
            {"branch_points", branch_point_count},
            {"odd_part_degree", odd_part_degree},
            {"admissible", admissible},
            {"split", split}};
  }
};

/// Analyzes the double cover y^2 = p(lambda): the branch points are the
/// roots of odd multiplicity, plus infinity when their number is odd.
/// A cover with no branch points (all multiplicities even) splits; it is
/// reported as genus 0 with the split flag set.
inline BranchAnalysis analyze_double_cover(const UniPoly& p) {
  if (p.is_zero()) throw std::domain_error("degenerate double cover: p = 0");
  BranchAnalysis out;
  out.p = p;
  UniPoly odd = UniPoly::constant(1);
  for (const auto& [factor, mult] : squarefree_decomposition(p))
    if (mult % 2 == 1) odd = odd * factor;
  out.odd_part_degree = odd.degree();
  out.branch_point_count = out.odd_part_degree + (out.odd_part_degree % 2 == 1 ? 1 : 0);
  if (out.branch_point_count == 0) {
    out.split = true;
    out.genus = 0;
  } else {
    out.genus = out.branch_point_count / 2 - 1;
  }
  out.admissible = (out.genus == 0);
  return out;
}

inline int hyperelliptic_genus(const UniPoly& p) { return analyze_double_cover(p).genus; }

/// The rationality constraint: the double cover branched at the roots of
/// ghat^2 - q must be rational.
inline BranchAnalysis is_admissible(const ModelParams& params) {
  return analyze_double_cover(params.g_hat * params.g_hat - params.q());
}

/// Genus of the double cover branched at the roots of q itself; always
/// floor((n-1)/2).
inline int ruled_base_genus(const ModelParams& params) {
  return hyperelliptic_genus(params.q());
}

/// Fiber degeneration over the lambda-line.
struct NonreducedFibers {
  std::vector<Rational> finite_values;  ///< 0, lambda_3, ..., lambda_{n+1}
  bool includes_infinity = true;
  VerificationReport checks;
};

/// The fibers of B -> CP^1 are non-reduced exactly over 0, the lambdas and
/// infinity: at each finite value the branch polynomial collapses to the
/// perfect square (eta1 eta2 - ghat(value))^2.
inline NonreducedFibers nonreduced_fibers(const ModelParams& params) {
  NonreducedFibers out;
  out.finite_values.push_back(0);
  for (const auto& l : params.lambdas) out.finite_values.push_back(l);
  const MultiPoly b = branch_polynomial(params);
  const std::vector<std::string> evars = {"eta1", "eta2"};
  const MultiPoly e1 = MultiPoly::variable(evars, "eta1");
  const MultiPoly e2 = MultiPoly::variable(evars, "eta2");
  for (const auto& value : out.finite_values) {
    std::map<std::string, MultiPoly> bind;
    bind["lambda"] = MultiPoly::constant(evars, value);
    const MultiPoly restricted = b.substitute(bind).reindexed(evars);
    const MultiPoly square_root =
        e1 * e2 - MultiPoly::constant(evars, params.g_hat.evaluate(value));
    out.checks.check_bool("branch.square.at." + rational_to_string(value),
                          restricted == square_root * square_root);
  }
  return out;
}

/// The lambda = infinity chart of the branch divisor.
struct InfinityChart {
  MultiPoly equation;     ///< in (etah1, etah2, mu)
  int a_type_exponent = 0;  ///< 3n-8: local form w^2 = mu^{3n-8} * unit
  bool reduced = false;     ///< n = 3: the infinity fiber is reduced
  VerificationReport checks;
};

/// In the chart mu = 1/lambda, etah_i = eta_i mu^{n-2} (from the bundle
/// P(O(n-2)^2 + O)), the branch equation becomes
///   (etah1 etah2 - mu^{n-3} gtilde(mu))^2 - mu^{3n-8} qtilde(mu)
/// with gtilde = mu^{n-1} ghat(1/mu), qtilde = mu^n q(1/mu), qtilde(0) = 1.
/// The substitution w = etah1 etah2 - mu^{n-3} gtilde certifies the
/// A_{3n-9} singularity along mu = 0 for n >= 4.
inline InfinityChart infinity_chart(const ModelParams& params) {
  const int n = params.n;
  InfinityChart out;
  out.a_type_exponent = 3 * n - 8;
  out.reduced = (n == 3);
  const UniPoly gt = params.g_hat.reversed(static_cast<std::size_t>(n - 1));
  const UniPoly qt = params.q().reversed(static_cast<std::size_t>(n));
  out.checks.check("infinity.qtilde.at.zero", Rational(1), qt.evaluate(0));

  const std::vector<std::string> vars = {"etah1", "etah2", "mu"};
  const MultiPoly h1 = MultiPoly::variable(vars, "etah1");
  const MultiPoly h2 = MultiPoly::variable(vars, "etah2");
  const MultiPoly mu = MultiPoly::variable(vars, "mu");
  const MultiPoly w =
      h1 * h2 - mu.pow(static_cast<unsigned>(n - 3)) * gt.to_multi("mu").reindexed(vars);
  out.equation = w * w - mu.pow(static_cast<unsigned>(3 * n - 8)) * qt.to_multi("mu").reindexed(vars);

  // Consistency with the finite chart: substituting mu = 1/lambda,
  // etah_i = eta_i mu^{n-2} and clearing mu^{4(n-2)} recovers the branch
  // polynomial -- verified by the reverse substitution mu -> 1/lambda on
  // rational sample values.
  const MultiPoly b = branch_polynomial(params);
  bool chart_ok = true;
  for (int s = 1; s <= 4 && chart_ok; ++s) {
    const Rational lam(s * 7 + 3, 2);
    const Rational mu_v = 1 / lam;
    Rational mu_pow = 1;  // mu^{n-2}
    for (int k = 0; k < n - 2; ++k) mu_pow *= mu_v;
    const Rational eta1(s, 3), eta2(2 * s + 1, 5);
    const Rational lhs = out.equation.evaluate(
        {{"etah1", eta1 * mu_pow}, {"etah2", eta2 * mu_pow}, {"mu", mu_v}});
    Rational clear = 1;  // mu^{4(n-2)}
    for (int k = 0; k < 4 * (n - 2); ++k) clear *= mu_v;
    const Rational rhs =
        clear * b.evaluate({{"eta1", eta1}, {"eta2", eta2}, {"lambda", lam}});
    if (lhs != rhs) chart_ok = false;
  }
  out.checks.check_bool("infinity.chart.consistency", chart_ok);
  // The mu = 0 fiber of the chart equation is a perfect square: the square
  // of w at mu = 0, which for n >= 4 collapses to the line pair
  // (etah1 etah2)^2 (for n = 3 the constant gtilde(0) survives in w).
  std::map<std::string, MultiPoly> at_zero;
  at_zero["mu"] = MultiPoly::constant({"etah1", "etah2"}, 0);
  const MultiPoly fiber = out.equation.substitute(at_zero).reindexed({"etah1", "etah2"});
  const MultiPoly w0 = w.substitute(at_zero).reindexed({"etah1", "etah2"});
  out.checks.check_bool("infinity.fiber.double", fiber == w0 * w0);
  if (n >= 4) {
    const MultiPoly he1 = MultiPoly::variable({"etah1", "etah2"}, "etah1");
    const MultiPoly he2 = MultiPoly::variable({"etah1", "etah2"}, "etah2");
    out.checks.check_bool("infinity.fiber.double.lines", w0 == he1 * he2);
  }
  return out;
}

/// Parameter counting for the moduli space.
struct ModuliCount {
  int params_g = 0;
  int params_lambda = 0;
  int scaling = 1;
  int rationality_constraints = 0;
  int dimension = 0;
};

inline ModuliCount moduli_dimension(int n) {
  if (n < 3) throw std::invalid_argument("moduli_dimension requires n >= 3");
  ModuliCount m;
  m.params_g = n;
  m.params_lambda = n - 1;
  m.scaling = 1;
  m.rationality_constraints = n - 2;
  m.dimension = (m.params_g + m.params_lambda) - (m.scaling + m.rationality_constraints);
  return m;
}

// ---------------------------------------------------------------------------
// Numeric-then-exact admissible search
// ---------------------------------------------------------------------------

enum class AdmissibleOutcome { Admissible, RoundingSpoiled, NoConvergence };

struct AdmissibleSearchResult {
  AdmissibleOutcome outcome = AdmissibleOutcome::NoConvergence;
  UniPoly g_hat;         ///< valid when outcome == Admissible
  double residual = 0.0;  ///< final Newton residual (sup-norm)
  BranchAnalysis analysis;  ///< exact certificate when Admissible
};

namespace detail {

/// Best rational approximation to x with denominator <= max_den
/// (continued-fraction convergent walk).
inline Rational round_to_denominator(double x, long long max_den) {
  if (!std::isfinite(x)) throw std::domain_error("cannot round non-finite value");
  const bool negative = x < 0;
  double v = negative ? -x : x;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(frac);
    if (fl > 9e17) break;
    const long long a = static_cast<long long>(fl);
    if (q0 + a * q1 > max_den) break;
    const long long p2 = p0 + a * p1, q2 = q0 + a * q1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double rem = frac - fl;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  Rational r(Int(p1), Int(q1 == 0 ? 1 : q1));
  return negative ? -r : r;
}

/// Solves the square dense double system a x = b in place; returns false if
/// near-singular.
inline bool solve_double(std::vector<std::vector<double>>& a, std::vector<double>& b) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(a[i][k]) > std::fabs(a[piv][k])) piv = i;
    if (std::fabs(a[piv][k]) < 1e-13) return false;
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i][k] / a[k][k];
      if (f == 0) continue;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k][j] * b[j];
    b[k] = s / a[k][k];
  }
  return true;
}

}  // namespace detail

/// Searches for ĝ (deg <= n-1) such that ghat^2 - q = r^2 h with r monic of
/// degree n-2 and h of degree <= 2, by Gauss-Newton least-norm iteration on
/// the 2n-1 coefficient-matching equations from a seeded random start.
/// Floats only find the candidate; the verdict is the exact genus of the
/// continued-fraction rounding of ĝ.
inline AdmissibleSearchResult find_admissible_g(int n, const std::vector<Rational>& lambdas,
                                                unsigned seed, double tol) {
  AdmissibleSearchResult result;
  if (n < 3) throw std::invalid_argument("find_admissible_g requires n >= 3");
  if (tol <= 0) return result;  // NoConvergence by contract
  ModelParams base;
  base.n = n;
  base.lambdas = lambdas;
  const UniPoly q_exact = base.q();
  std::vector<double> qc(static_cast<std::size_t>(2 * n - 1), 0.0);
  for (int k = 0; k <= q_exact.degree(); ++k)
    qc[static_cast<std::size_t>(k)] =
        static_cast<double>(num(q_exact.coefficient(static_cast<std::size_t>(k)))) /
        static_cast<double>(den(q_exact.coefficient(static_cast<std::size_t>(k))));

  // Unknowns: g_0..g_{n-1}, r_0..r_{n-3} (r monic), h_0..h_2.
  const int ng = n, nr = n - 2, nh = 3;
  const int nu = ng + nr + nh;
  const int ne = 2 * n - 1;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> start(-3.0, 3.0);
  std::vector<double> x(static_cast<std::size_t>(nu));
  for (auto& v : x) v = start(rng);

  const auto poly_mul = [](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
  };
  const auto pad = [&](std::vector<double> v) {
    v.resize(static_cast<std::size_t>(ne), 0.0);
    return v;
  };

  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int iter = 0; iter < 80; ++iter) {
    std::vector<double> g(x.begin(), x.begin() + ng);
    std::vector<double> r(x.begin() + ng, x.begin() + ng + nr);
    r.push_back(1.0);  // monic leading coefficient
    std::vector<double> h(x.begin() + ng + nr, x.end());

    const auto gg = pad(poly_mul(g, g));
    const auto rr = poly_mul(r, r);
    const auto rrh = pad(poly_mul(rr, h));
    std::vector<double> f(static_cast<std::size_t>(ne));
    residual = 0.0;
    for (int k = 0; k < ne; ++k) {
      f[static_cast<std::size_t>(k)] =
          gg[static_cast<std::size_t>(k)] - qc[static_cast<std::size_t>(k)] -
          rrh[static_cast<std::size_t>(k)];
      residual = std::max(residual, std::fabs(f[static_cast<std::size_t>(k)]));
    }
    if (residual < tol) {
      converged = true;
      break;
    }

    // Jacobian: dF/dg_i = coeffs(2 g x^i), dF/dr_j = -coeffs(2 r h x^j),
    // dF/dh_k = -coeffs(r^2 x^k).
    std::vector<std::vector<double>> J(static_cast<std::size_t>(ne),
                                       std::vector<double>(static_cast<std::size_t>(nu), 0.0));
    for (int i = 0; i < ng; ++i)
      for (int k = 0; k < ng; ++k)
        if (i + k < ne) J[static_cast<std::size_t>(i + k)][static_cast<std::size_t>(i)] +=
            2.0 * g[static_cast<std::size_t>(k)];
    const auto rh = poly_mul(r, h);
    for (int j = 0; j < nr; ++j)
      for (std::size_t k = 0; k < rh.size(); ++k)
        if (j + static_cast<int>(k) < ne)
          J[static_cast<std::size_t>(j + static_cast<int>(k))]
           [static_cast<std::size_t>(ng + j)] -= 2.0 * rh[k];
    for (int k2 = 0; k2 < nh; ++k2)
      for (std::size_t k = 0; k < rr.size(); ++k)
        if (k2 + static_cast<int>(k) < ne)
          J[static_cast<std::size_t>(k2 + static_cast<int>(k))]
           [static_cast<std::size_t>(ng + nr + k2)] -= rr[k];

    // Least-norm Gauss-Newton step: solve (J J^T) y = -F, delta = J^T y.
    std::vector<std::vector<double>> jjt(static_cast<std::size_t>(ne),
                                         std::vector<double>(static_cast<std::size_t>(ne), 0.0));
    for (int a = 0; a < ne; ++a)
      for (int b = 0; b < ne; ++b) {
        double s = 0;
        for (int c = 0; c < nu; ++c)
          s += J[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] *
               J[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
        jjt[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = s;
        if (a == b) jjt[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += 1e-12;
      }
    std::vector<double> y(static_cast<std::size_t>(ne));
    for (int a = 0; a < ne; ++a) y[static_cast<std::size_t>(a)] = -f[static_cast<std::size_t>(a)];
    if (!detail::solve_double(jjt, y)) break;
    for (int c = 0; c < nu; ++c) {
      double s = 0;
      for (int a = 0; a < ne; ++a)
        s += J[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] *
             y[static_cast<std::size_t>(a)];
      x[static_cast<std::size_t>(c)] += s;
    }
  }

  result.residual = residual;
  if (!converged) return result;  // NoConvergence

  // Rational rounding ladder on the ĝ coefficients; the exact genus decides.
  for (const long long max_den :
       {8LL, 16LL, 64LL, 256LL, 1024LL, 100000LL, 100000000LL}) {
    std::vector<Rational> gc;
    for (int i = 0; i < ng; ++i)
      gc.push_back(detail::round_to_denominator(x[static_cast<std::size_t>(i)], max_den));
    const UniPoly candidate{std::vector<Rational>(gc)};
    const BranchAnalysis analysis = analyze_double_cover(candidate * candidate - q_exact);
    if (analysis.admissible) {
      result.outcome = AdmissibleOutcome::Admissible;
      result.g_hat = candidate;
      result.analysis = analysis;
      return result;
    }
  }
  result.outcome = AdmissibleOutcome::RoundingSpoiled;
  return result;
}

}  // namespace twistor

#endif  // TWISTOR_BRANCH_HPP
