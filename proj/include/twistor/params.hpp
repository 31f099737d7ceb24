/// @file params.hpp
/// @brief Model parameters (n, the lambda spectrum, the polynomial ĝ, the
///        conic constant c, the optional linear form g) with validation and
///        the exact-rational JSON file format.
#ifndef TWISTOR_PARAMS_HPP
#define TWISTOR_PARAMS_HPP

#include "twistor/rational.hpp"
#include "twistor/unipoly.hpp"

#include <json.hpp>

#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistor {

/// Parameters of the model: the spectrum lambda_3 < ... < lambda_{n+1} of
/// nonzero rationals (lambda_2 = 0 implicit), the degree <= n-1 polynomial
/// ĝ, and the constant c with |c|^2 = 1/4 (default 1/2).
struct ModelParams {
  int n = 0;
  std::vector<Rational> lambdas;  ///< lambda_3 .. lambda_{n+1}
  UniPoly g_hat;
  GaussRational c{Rational(1, 2), Rational(0)};
  /// Optional coefficients of the linear form g in z_1..z_{n+2}.
  std::vector<Rational> g_linear;

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const {
    if (n < 3) throw std::invalid_argument("params: n must be >= 3");
    if (static_cast<int>(lambdas.size()) != n - 1)
      throw std::invalid_argument("params: expected n-1 lambda values");
    bool increasing = true, decreasing = true;
    Rational prev = 0;
    for (const auto& l : lambdas) {
      if (l == 0) throw std::invalid_argument("params: lambdas must be nonzero");
      if (!(l > prev)) increasing = false;
      if (!(l < prev)) decreasing = false;
      prev = l;
    }
    if (!increasing && !decreasing)
      throw std::invalid_argument("params: lambdas must be strictly monotone away from 0");
    if (g_hat.degree() > n - 1)
      throw std::invalid_argument("params: deg(g_hat) must be <= n-1");
    if (c.norm() != Rational(1, 4))
      throw std::invalid_argument("params: |c|^2 must be 1/4");
    if (!g_linear.empty() && static_cast<int>(g_linear.size()) != n + 2)
      throw std::invalid_argument("params: g_linear needs n+2 coefficients");
  }

  /// q(lambda) = lambda * prod_{i=3}^{n+1} (lambda - lambda_i), monic of
  /// degree n.
  UniPoly q() const {
    UniPoly p = UniPoly::x();
    for (const auto& l : lambdas) p = p * UniPoly({-l, 1});
    return p;
  }
};

/// Default spectrum lambda_i = i - 2 (i.e. 1, 2, ..., n-1).
inline std::vector<Rational> default_lambdas(int n) {
  std::vector<Rational> ls;
  for (int i = 1; i <= n - 1; ++i) ls.emplace_back(i);
  return ls;
}

/// Deterministic random nonzero rational with small numerator/denominator.
inline Rational random_rational(std::mt19937& rng, int span = 40) {
  std::uniform_int_distribution<int> numd(-span, span);
  std::uniform_int_distribution<int> dend(1, 12);
  Rational r = 0;
  while (r == 0) r = Rational(numd(rng), dend(rng));
  return r;
}

/// Random ĝ of exact degree n-1 (leading coefficient forced nonzero).
inline UniPoly random_g_hat(int n, std::mt19937& rng) {
  std::vector<Rational> c(static_cast<std::size_t>(n));
  std::uniform_int_distribution<int> numd(-20, 20);
  std::uniform_int_distribution<int> dend(1, 8);
  for (auto& v : c) v = Rational(numd(rng), dend(rng));
  if (c.back() == 0) c.back() = 1;
  return UniPoly(std::move(c));
}

/// Parses the JSON params file: rationals are strings "p/q"; decimals are
/// rejected.  Throws std::invalid_argument on malformed input.
inline ModelParams parse_params_json(const nlohmann::json& j) {
  ModelParams p;
  const auto get_rational = [](const nlohmann::json& v) {
    if (!v.is_string())
      throw std::invalid_argument("params: rationals must be strings \"p/q\"");
    return parse_rational(v.get<std::string>());
  };
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw std::invalid_argument("params: missing integer field n");
  p.n = j["n"].get<int>();
  if (j.contains("lambdas"))
    for (const auto& v : j["lambdas"]) p.lambdas.push_back(get_rational(v));
  else
    p.lambdas = default_lambdas(p.n);
  if (j.contains("g_hat")) {
    std::vector<Rational> c;
    for (const auto& v : j["g_hat"]) c.push_back(get_rational(v));
    p.g_hat = UniPoly(std::move(c));
  }
  if (j.contains("c")) {
    const auto& cv = j["c"];
    if (!cv.is_array() || cv.size() != 2)
      throw std::invalid_argument("params: c must be a [re, im] pair");
    p.c = GaussRational(get_rational(cv[0]), get_rational(cv[1]));
  }
  if (j.contains("g_linear"))
    for (const auto& v : j["g_linear"]) p.g_linear.push_back(get_rational(v));
  p.validate();
  return p;
}

inline ModelParams load_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open params file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("params JSON parse error: ") + e.what());
  }
  return parse_params_json(j);
}

}  // namespace twistor

#endif  // TWISTOR_PARAMS_HPP
