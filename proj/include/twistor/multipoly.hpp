/// @file multipoly.hpp
/// @brief Sparse multivariate polynomials over Q with a deterministic
///        graded-lexicographic term order and a byte-stable text rendering.
#ifndef TWISTOR_MULTIPOLY_HPP
#define TWISTOR_MULTIPOLY_HPP

#include "twistor/rational.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistor {

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in graded-lex descending order (higher total degree first,
/// ties broken lexicographically on the exponent vector), so iteration order,
/// equality and the text rendering are all canonical.  Zero coefficients are
/// never stored.  Values are immutable in spirit: every operation returns a
/// new polynomial.
class MultiPoly {
 public:
  using Exponents = std::vector<unsigned>;

  /// Graded-lex descending comparison on exponent vectors of equal arity.
  struct TermOrder {
    bool operator()(const Exponents& a, const Exponents& b) const {
      const unsigned da = std::accumulate(a.begin(), a.end(), 0u);
      const unsigned db = std::accumulate(b.begin(), b.end(), 0u);
      if (da != db) return da > db;
      return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
  };
  using TermMap = std::map<Exponents, Rational, TermOrder>;

  MultiPoly() = default;  ///< zero polynomial over the empty variable set
  explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MultiPoly constant(std::vector<std::string> vars, const Rational& value) {
    MultiPoly p(std::move(vars));
    p.add_term(Exponents(p.vars_.size(), 0), value);
    return p;
  }
  static MultiPoly variable(std::vector<std::string> vars, const std::string& name) {
    MultiPoly p(std::move(vars));
    Exponents e(p.vars_.size(), 0);
    e.at(p.index_of(name)) = 1;
    p.add_term(e, 1);
    return p;
  }

  const std::vector<std::string>& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_)
      d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
    return d;
  }
  unsigned degree_in(const std::string& var) const {
    const std::size_t i = index_of(var);
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
    return d;
  }

  Rational coefficient(const Exponents& e) const {
    const auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    auto [x, y] = aligned(a, b);
    for (const auto& [e, c] : y.terms_) x.add_term(e, c);
    return x;
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    auto [x, y] = aligned(a, b);
    for (const auto& [e, c] : y.terms_) x.add_term(e, -c);
    return x;
  }
  MultiPoly operator-() const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    auto [x, y] = aligned(a, b);
    MultiPoly r(x.vars_);
    for (const auto& [ea, ca] : x.terms_)
      for (const auto& [eb, cb] : y.terms_) {
        Exponents e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend MultiPoly operator*(const Rational& s, const MultiPoly& p) {
    MultiPoly r(p.vars_);
    if (s == 0) return r;
    for (const auto& [e, c] : p.terms_) r.terms_.emplace(e, s * c);
    return r;
  }
  MultiPoly pow(unsigned k) const {
    MultiPoly r = constant(vars_, 1);
    MultiPoly base = *this;
    for (; k; k >>= 1) {
      if (k & 1u) r = r * base;
      if (k > 1) base = base * base;
    }
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    auto [x, y] = aligned(a, b);
    return x.terms_ == y.terms_;
  }

  /// Homomorphic substitution var -> polynomial.  Unbound variables map to
  /// themselves.  The result variable set is the union (in declaration
  /// order) of the unbound variables and the binding images' variables.
  MultiPoly substitute(const std::map<std::string, MultiPoly>& bindings) const {
    std::vector<std::string> out_vars;
    for (const auto& v : vars_)
      if (!bindings.count(v)) out_vars.push_back(v);
    for (const auto& [v, img] : bindings)
      for (const auto& w : img.variables())
        if (std::find(out_vars.begin(), out_vars.end(), w) == out_vars.end())
          out_vars.push_back(w);
    if (out_vars.empty()) out_vars.push_back(vars_.empty() ? "_" : vars_.front());

    // Per-variable images over the common output variable set.
    std::vector<MultiPoly> image;
    for (const auto& v : vars_) {
      const auto it = bindings.find(v);
      MultiPoly img = (it != bindings.end()) ? it->second : variable({v}, v);
      image.push_back(img.reindexed(out_vars));
    }
    MultiPoly r(out_vars);
    for (const auto& [e, c] : terms_) {
      MultiPoly term = constant(out_vars, c);
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (e[i] > 0) term = term * image[i].pow(e[i]);
      r = r + term;
    }
    return r;
  }

  /// Full evaluation at rational points; every variable must be bound.
  Rational evaluate(const std::map<std::string, Rational>& point) const {
    Rational total = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (e[i] == 0) continue;
        const auto it = point.find(vars_[i]);
        if (it == point.end())
          throw std::invalid_argument("unbound variable in evaluate: " + vars_[i]);
        Rational p = 1;
        for (unsigned k = 0; k < e[i]; ++k) p *= it->second;
        t *= p;
      }
      total += t;
    }
    return total;
  }

  /// Exact division; throws if the divisor does not divide exactly.
  /// (Used by the fraction-free determinant, where divisibility is a
  /// theorem, and by symbolic-division checks.)
  MultiPoly divide_exact(const MultiPoly& divisor) const {
    auto [r, d] = aligned(*this, divisor);
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    MultiPoly q(r.vars_);
    const auto& [de, dc] = *d.terms_.begin();
    while (!r.is_zero()) {
      const auto& [re, rc] = *r.terms_.begin();
      Exponents e(re.size());
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (re[i] < de[i]) throw std::domain_error("inexact polynomial division");
        e[i] = re[i] - de[i];
      }
      MultiPoly t(r.vars_);
      t.add_term(e, rc / dc);
      q = q + t;
      r = r - t * d;
    }
    return q;
  }

  /// Coefficients of the polynomial viewed as univariate in `var`,
  /// ascending in degree; each coefficient keeps the full variable set
  /// (with `var`'s exponent zeroed).
  std::vector<MultiPoly> coefficients_in(const std::string& var) const {
    const std::size_t i = index_of(var);
    std::vector<MultiPoly> out(degree_in(var) + 1, MultiPoly(vars_));
    for (const auto& [e, c] : terms_) {
      Exponents rest = e;
      const unsigned k = rest[i];
      rest[i] = 0;
      out[k].add_term(rest, c);
    }
    return out;
  }

  /// Canonical rendering: graded-lex descending terms joined by " + ",
  /// each term as `coeff * v^e*w^f`, rationals as `p/q`.  This string is
  /// the byte-exact output contract.
  std::string to_text() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) out += " + ";
      first = false;
      out += rational_to_string(c);
      std::string mono;
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_[i];
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (!mono.empty()) out += " * " + mono;
    }
    return out;
  }

  /// Same polynomial over a different variable list (superset, reordering,
  /// or one dropping variables the polynomial does not actually use).
  MultiPoly reindexed(const std::vector<std::string>& new_vars) const {
    MultiPoly r(new_vars);
    constexpr std::size_t kDropped = static_cast<std::size_t>(-1);
    std::vector<std::size_t> pos(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      const auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
      pos[i] = (it == new_vars.end()) ? kDropped
                                      : static_cast<std::size_t>(it - new_vars.begin());
    }
    for (const auto& [e, c] : terms_) {
      Exponents ne(new_vars.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (pos[i] == kDropped) {
          if (e[i] != 0)
            throw std::invalid_argument("reindexed: dropped variable " + vars_[i] + " in use");
          continue;
        }
        ne[pos[i]] = e[i];
      }
      r.terms_.emplace(ne, c);
    }
    return r;
  }

  void add_term(const Exponents& e, const Rational& c) {
    if (e.size() != vars_.size()) throw std::invalid_argument("exponent arity mismatch");
    if (c == 0) return;
    const auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

 private:
  std::size_t index_of(const std::string& var) const {
    const auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) throw std::invalid_argument("unknown variable: " + var);
    return static_cast<std::size_t>(it - vars_.begin());
  }

  /// Brings two polynomials over the union of their variable sets
  /// (left operand's order first, unseen right-hand variables appended).
  static std::pair<MultiPoly, MultiPoly> aligned(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ == b.vars_) return {a, b};
    std::vector<std::string> u = a.vars_;
    for (const auto& v : b.vars_)
      if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
    return {a.reindexed(u), b.reindexed(u)};
  }

  std::vector<std::string> vars_;
  TermMap terms_;
};

/// Sylvester resultant of p and q with respect to `var`, both viewed as
/// univariate in `var` with multivariate coefficients.  Computed as a
/// fraction-free (Bareiss) determinant, so all intermediate divisions are
/// exact.
inline MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, const std::string& var) {
  if (p.is_zero() || q.is_zero()) throw std::domain_error("resultant of zero polynomial");
  const auto pc = p.coefficients_in(var);
  const auto qc = q.coefficients_in(var);
  const std::size_t m = pc.size() - 1, n = qc.size() - 1;
  const std::vector<std::string> vars = pc.front().variables();
  const MultiPoly zero(vars), one = MultiPoly::constant(vars, 1);
  if (m == 0 && n == 0) return one;
  if (m == 0) return pc[0].pow(static_cast<unsigned>(n));
  if (n == 0) return qc[0].pow(static_cast<unsigned>(m));

  const std::size_t size = m + n;
  std::vector<std::vector<MultiPoly>> M(size, std::vector<MultiPoly>(size, zero));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) M[r][r + m - k] = pc[k].reindexed(vars);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) M[n + r][r + n - k] = qc[k].reindexed(vars);

  // Bareiss fraction-free elimination.
  int sign = 1;
  MultiPoly prev = one;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (M[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < size && M[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == size) return zero;  // singular: resultant vanishes
      std::swap(M[k], M[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < size; ++i)
      for (std::size_t j = k + 1; j < size; ++j)
        M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).divide_exact(prev);
    prev = M[k][k];
  }
  MultiPoly det = M[size - 1][size - 1];
  return sign < 0 ? -det : det;
}

}  // namespace twistor

#endif  // TWISTOR_MULTIPOLY_HPP
