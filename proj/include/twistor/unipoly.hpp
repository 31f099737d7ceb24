/// @file unipoly.hpp
/// @brief Dense univariate polynomials over Q: Euclidean algebra, Yun
///        square-free decomposition, and conversions to/from MultiPoly.
#ifndef TWISTOR_UNIPOLY_HPP
#define TWISTOR_UNIPOLY_HPP

#include "twistor/multipoly.hpp"
#include "twistor/rational.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistor {

/// Dense univariate polynomial with rational coefficients, ascending order,
/// trailing zeros trimmed.  The zero polynomial stores no coefficients.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UniPoly constant(const Rational& v) { return UniPoly({v}); }
  /// The monomial x.
  static UniPoly x() { return UniPoly({0, 1}); }

  const std::vector<Rational>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  Rational leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero");
    return c_.back();
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return UniPoly(std::move(r));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
  UniPoly operator-() const {
    std::vector<Rational> r = c_;
    for (auto& v : r) v = -v;
    return UniPoly(std::move(r));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(r));
  }
  friend UniPoly operator*(const Rational& s, const UniPoly& p) {
    std::vector<Rational> r = p.c_;
    for (auto& v : r) v *= s;
    return UniPoly(std::move(r));
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  UniPoly pow(unsigned k) const {
    UniPoly r = constant(1), base = *this;
    for (; k; k >>= 1) {
      if (k & 1u) r = r * base;
      if (k > 1) base = base * base;
    }
    return r;
  }

  Rational evaluate(const Rational& x) const {
    Rational v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
    return v;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = Rational(i) * c_[i];
    return UniPoly(std::move(r));
  }

  /// Euclidean division; returns (quotient, remainder).
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    UniPoly q, r = *this;
    std::vector<Rational> qc(r.c_.size(), Rational(0));
    while (!r.is_zero() && r.degree() >= d.degree()) {
      const std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
      const Rational factor = r.leading() / d.leading();
      qc[shift] += factor;
      std::vector<Rational> sub(shift, Rational(0));
      sub.insert(sub.end(), d.c_.begin(), d.c_.end());
      for (auto& v : sub) v *= factor;
      r = r - UniPoly(std::move(sub));
    }
    return {UniPoly(std::move(qc)), r};
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    return (Rational(1) / leading()) * (*this);
  }

  /// Monic gcd by the Euclidean algorithm.
  static UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
      UniPoly r = a.divmod(b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Composition p(q(x)).
  UniPoly compose(const UniPoly& q) const {
    UniPoly v;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * q + constant(*it);
    return v;
  }

  /// Coefficient reversal padded to `target_degree`: x^d * p(1/x).
  UniPoly reversed(std::size_t target_degree) const {
    if (degree() > static_cast<int>(target_degree))
      throw std::invalid_argument("reversed: degree exceeds target");
    std::vector<Rational> r(target_degree + 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[target_degree - i] = c_[i];
    return UniPoly(std::move(r));
  }

  MultiPoly to_multi(const std::string& var) const {
    MultiPoly p({var});
    for (std::size_t i = 0; i < c_.size(); ++i) p.add_term({static_cast<unsigned>(i)}, c_[i]);
    return p;
  }
  /// Converts a MultiPoly that involves only `var` into dense form.
  static UniPoly from_multi(const MultiPoly& p, const std::string& var) {
    std::vector<Rational> c(p.degree_in(var) + 1, Rational(0));
    const auto& vars = p.variables();
    for (const auto& [e, coeff] : p.terms()) {
      unsigned deg = 0;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (e[i] == 0) continue;
        if (vars[i] != var)
          throw std::invalid_argument("from_multi: polynomial not univariate in " + var);
        deg = e[i];
      }
      c[deg] = coeff;
    }
    return UniPoly(std::move(c));
  }

  std::string to_text(const std::string& var) const { return to_multi(var).to_text(); }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Yun's square-free decomposition over Q: p = lc * prod f_i^{m_i} with the
/// f_i monic, square-free and pairwise coprime.  Returned in ascending
/// multiplicity order, factors of multiplicity i possibly trivial (omitted).
inline std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& p) {
  if (p.is_zero()) throw std::domain_error("square-free decomposition of zero");
  std::vector<std::pair<UniPoly, int>> out;
  if (p.degree() == 0) return out;
  const UniPoly q = p.monic();
  UniPoly g = UniPoly::gcd(q, q.derivative());
  UniPoly w = q.divmod(g).first;            // product of distinct factors
  UniPoly y = q.derivative().divmod(g).first;
  int multiplicity = 1;
  while (w.degree() > 0) {
    UniPoly z = y - w.derivative();
    UniPoly f = UniPoly::gcd(w, z);
    if (f.degree() > 0) out.emplace_back(f, multiplicity);
    w = w.divmod(f).first;
    y = z.divmod(f).first;
    ++multiplicity;
  }
  return out;
}

}  // namespace twistor

#endif  // TWISTOR_UNIPOLY_HPP
