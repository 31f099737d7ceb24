/// @file rational.hpp
/// @brief Exact arithmetic scalars: arbitrary-precision integers, rationals,
///        and Gaussian rationals (elements of Q(i) stored as real/imaginary pairs).
#ifndef TWISTOR_RATIONAL_HPP
#define TWISTOR_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace twistor {

/// Arbitrary-precision signed integer.  All lattice coefficients and
/// polynomial exponents bookkeeping use this type; nothing ever wraps.
using Int = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always stored normalized (positive
/// denominator, coprime numerator/denominator).
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Renders "p" when the denominator is 1, otherwise "p/q".
inline std::string rational_to_string(const Rational& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

/// Parses "p" or "p/q" with optional leading sign.  Decimal notation is
/// rejected on purpose: inputs must be exact.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  if (text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
      text.find('E') != std::string::npos)
    throw std::invalid_argument("decimal notation rejected, use p/q: " + text);
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(text));
    const Int p(text.substr(0, slash));
    const Int q(text.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rational(p, q);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational literal: " + text);
  }
}

/// Element of Q(i) as an exact (re, im) pair.  Used for the constant c and
/// its conjugate in the branch-divisor derivation; every final identity
/// must come out with zero imaginary part, which callers check explicitly.
struct GaussRational {
  Rational re;
  Rational im;

  GaussRational() = default;
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  GaussRational conj() const { return {re, -im}; }
  /// |c|^2 = re^2 + im^2, an ordinary rational.
  Rational norm() const { return re * re + im * im; }
  bool is_zero() const { return re == 0 && im == 0; }

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussRational inverse() const {
    const Rational n = norm();
    if (n == 0) throw std::domain_error("division by zero in Q(i)");
    return {re / n, -im / n};
  }
  friend GaussRational operator/(const GaussRational& a, const GaussRational& b) {
    return a * b.inverse();
  }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

}  // namespace twistor

#endif  // TWISTOR_RATIONAL_HPP
