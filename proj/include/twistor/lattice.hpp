/// @file lattice.hpp
/// @brief Blow-up engine for rational surfaces: Picard lattices with tracked
///        curve classes, intersection numbers, adjunction genera, and the
///        two concrete surfaces used throughout — the 2n-fold blow-up S of
///        the quadric and the minimal resolution T~ of the minitwistor
///        surface, declared as an abstract rank-2n lattice.
#ifndef TWISTOR_LATTICE_HPP
#define TWISTOR_LATTICE_HPP

#include "twistor/rational.hpp"
#include "twistor/report.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistor {

/// Integer vector in the H^2 basis of its owning lattice
/// (base classes first, then exceptional classes in blow-up order).
struct DivisorClass {
  std::vector<Int> c;

  DivisorClass() = default;
  explicit DivisorClass(std::size_t rank) : c(rank, Int(0)) {}

  std::size_t rank() const { return c.size(); }

  friend DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    check_rank(a, b);
    DivisorClass r(a.rank());
    for (std::size_t i = 0; i < r.rank(); ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
  }
  friend DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
    check_rank(a, b);
    DivisorClass r(a.rank());
    for (std::size_t i = 0; i < r.rank(); ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
  }
  friend DivisorClass operator*(const Int& s, const DivisorClass& a) {
    DivisorClass r(a.rank());
    for (std::size_t i = 0; i < r.rank(); ++i) r.c[i] = s * a.c[i];
    return r;
  }
  DivisorClass operator-() const { return Int(-1) * (*this); }
  friend bool operator==(const DivisorClass& a, const DivisorClass& b) { return a.c == b.c; }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ",";
      s += c[i].str();
    }
    return s + ")";
  }

 private:
  static void check_rank(const DivisorClass& a, const DivisorClass& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("divisor class rank mismatch");
  }
};

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
inline Int integer_determinant(std::vector<std::vector<Int>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && m[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(m[k], m[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    prev = m[k][k];
  }
  return sign < 0 ? Int(-m[n - 1][n - 1]) : m[n - 1][n - 1];
}

/// Signature (#positive, #negative eigenvalues) of a symmetric integer
/// matrix, by exact congruent diagonalization; requires a nondegenerate
/// form (checked via the diagonalization itself).
inline std::pair<int, int> symmetric_signature(const std::vector<std::vector<Int>>& gram) {
  const std::size_t n = gram.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(gram[i][j]);
  int pos = 0, neg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      // Try a basis swap to bring a nonzero diagonal entry up.
      std::size_t s = k + 1;
      while (s < n && m[s][s] == 0) ++s;
      if (s < n) {
        std::swap(m[k], m[s]);
        for (auto& row : m) std::swap(row[k], row[s]);
      } else {
        // All remaining diagonal entries vanish; use v_k <- v_k + v_j
        // against some j with m[k][j] != 0 to create a nonzero square.
        std::size_t j = k + 1;
        while (j < n && m[k][j] == 0) ++j;
        if (j == n) throw std::domain_error("degenerate intersection form");
        for (std::size_t t = 0; t < n; ++t) m[k][t] += m[j][t];
        for (std::size_t t = 0; t < n; ++t) m[t][k] += m[t][j];
      }
    }
    const Rational pivot = m[k][k];
    if (pivot > 0)
      ++pos;
    else
      ++neg;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Rational factor = m[i][k] / pivot;
      if (factor == 0) continue;
      for (std::size_t j = k; j < n; ++j) m[i][j] -= factor * m[k][j];
      for (std::size_t j = k; j < n; ++j) m[j][i] -= factor * m[j][k];
    }
  }
  return {pos, neg};
}

/// Solves G x = b exactly over Q (Gaussian elimination); throws if singular.
inline std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> a,
                                            std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) throw std::domain_error("singular linear system");
    std::swap(a[k], a[p]);
    std::swap(b[k], b[p]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Rational f = a[i][k] / a[k][k];
      if (f == 0) continue;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t k = n; k-- > 0;) {
    Rational s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k][j] * x[j];
    x[k] = s / a[k][k];
  }
  return x;
}

/// A lattice with a symmetric integer pairing, a canonical class, and a
/// table of named tracked classes.  Shared by the blow-up surfaces (whose
/// Gram matrix is hyperbolic-plus-diagonal) and the abstract T~ lattice.
class Lattice {
 public:
  std::vector<std::string> basis;
  std::vector<std::vector<Int>> gram;
  DivisorClass canonical;
  std::map<std::string, DivisorClass> curves;

  std::size_t rank() const { return basis.size(); }

  DivisorClass basis_class(std::size_t i) const {
    DivisorClass d(rank());
    d.c.at(i) = 1;
    return d;
  }
  const DivisorClass& curve(const std::string& name) const {
    const auto it = curves.find(name);
    if (it == curves.end()) throw std::invalid_argument("unknown curve name: " + name);
    return it->second;
  }
  bool has_curve(const std::string& name) const { return curves.count(name) != 0; }

  Int intersect(const DivisorClass& a, const DivisorClass& b) const {
    if (a.rank() != rank() || b.rank() != rank())
      throw std::invalid_argument("divisor class does not belong to this lattice");
    Int total = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (a.c[i] == 0) continue;
      for (std::size_t j = 0; j < rank(); ++j) {
        if (b.c[j] == 0 || gram[i][j] == 0) continue;
        total += a.c[i] * gram[i][j] * b.c[j];
      }
    }
    return total;
  }
  Int self_intersection(const DivisorClass& a) const { return intersect(a, a); }
  Int k_squared() const { return intersect(canonical, canonical); }

  /// Adjunction genus 1 + (D^2 + K.D)/2; throws when not an integer.
  Int virtual_genus(const DivisorClass& d) const {
    const Int twice = self_intersection(d) + intersect(canonical, d);
    if (twice % 2 != 0) throw std::domain_error("half-integer virtual genus: non-curve-like class");
    return 1 + twice / 2;
  }

  Int determinant() const { return integer_determinant(gram); }
  std::pair<int, int> signature() const { return symmetric_signature(gram); }
};

/// Blow-up center: the names of the tracked curves through the point
/// (the center is a smooth point of each, multiplicity one), plus the
/// basis name for the new exceptional class.
struct PointSpec {
  std::vector<std::string> on_curves;
  std::string exceptional_name;
  /// Optionally keep tracking the exceptional curve under this name.
  std::string track_exceptional_as;
};

/// A rational surface presented as the quadric plus an ordered blow-up
/// history, with tracked curve classes.
class BlowupSurface {
 public:
  Lattice lat;
  std::vector<PointSpec> history;

  /// CP^1 x CP^1 with ruling classes A, B (A.B = 1, A^2 = B^2 = 0) and
  /// K = -2A - 2B.
  static BlowupSurface new_base_quadric() {
    BlowupSurface s;
    s.lat.basis = {"A", "B"};
    s.lat.gram = {{0, 1}, {1, 0}};
    s.lat.canonical = Int(-2) * s.lat.basis_class(0) + Int(-2) * s.lat.basis_class(1);
    return s;
  }

  std::size_t blowup_count() const { return history.size(); }

  /// Track a (possibly derived) class under a name.
  void track(const std::string& name, const DivisorClass& d) {
    if (d.rank() != lat.rank()) throw std::invalid_argument("track: rank mismatch");
    lat.curves[name] = d;
  }

  /// Blows up a point: appends an exceptional class e (e^2 = -1, orthogonal
  /// to everything else), subtracts e from every tracked curve through the
  /// center, and replaces K by K + e.
  BlowupSurface blow_up(const PointSpec& p) const {
    BlowupSurface s = *this;
    for (const auto& name : p.on_curves)
      if (!s.lat.has_curve(name)) throw std::invalid_argument("blow_up: unknown curve " + name);
    const std::size_t r = s.lat.rank();
    s.lat.basis.push_back(p.exceptional_name);
    for (auto& row : s.lat.gram) row.push_back(0);
    s.lat.gram.emplace_back(r + 1, Int(0));
    s.lat.gram[r][r] = -1;
    s.lat.canonical.c.push_back(1);
    for (auto& [name, cls] : s.lat.curves) cls.c.push_back(0);
    for (const auto& name : p.on_curves) s.lat.curves[name].c[r] -= 1;
    if (!p.track_exceptional_as.empty()) s.lat.curves[p.track_exceptional_as] = s.lat.basis_class(r);
    s.history.push_back(p);
    return s;
  }
};

/// The surface S: 2n blow-ups of the quadric carrying the anticanonical
/// cycle C_1,...,C_{n+1}, conjugates Cb_i, and the four B-curves.
struct SurfaceS {
  int n = 0;
  BlowupSurface surface;
  /// Basis permutation realizing the real structure (e-tower <-> f-tower).
  std::vector<std::size_t> conj_perm;

  const Lattice& lattice() const { return surface.lat; }

  DivisorClass conjugate(const DivisorClass& d) const {
    DivisorClass r(d.rank());
    for (std::size_t i = 0; i < d.rank(); ++i) r.c[conj_perm[i]] = d.c[i];
    return r;
  }
  /// Curve-name involution: C3 <-> Cb3, B1 <-> Bb1, etc.
  static std::string conjugate_name(const std::string& name) {
    // Names are "C<i>"/"Cb<i>" and "B<i>"/"Bb<i>".
    if (name.size() >= 2 && name[1] == 'b') return name.substr(0, 1) + name.substr(2);
    return name.substr(0, 1) + "b" + name.substr(1);
  }
};

/// Canonical blow-up script for S (see README): towers e_1..e_n over P_1
/// and f_1..f_n over the conjugate point, yielding
///   C_1 = A - e_1 - ... - e_{n-1},  C_i = e_{n+1-i} - e_{n+2-i} (2<=i<=n),
///   C_{n+1} = B - e_1,  B_1 = e_n,
///   B_2 = A + (n-1)B - (e_1+...+e_{n-1}) - (f_1+...+f_n),
/// and the conjugate classes with the towers exchanged.
inline SurfaceS build_surface_S(int n) {
  if (n < 3) throw std::invalid_argument("build_surface_S requires n >= 3");
  BlowupSurface s = BlowupSurface::new_base_quadric();
  const auto cname = [](const char* base, int i, bool bar) {
    return std::string(1, base[0]) + (bar ? "b" : "") + std::to_string(i);
  };
  // Initial tracked curves: C1/Cb1 are rulings in |O(1,0)|, C_{n+1}/Cb_{n+1}
  // the fibers of the other ruling through the centers.
  s.track("C1", s.lat.basis_class(0));
  s.track(cname("C", 1, true), s.lat.basis_class(0));
  s.track(cname("C", n + 1, false), s.lat.basis_class(1));
  s.track(cname("C", n + 1, true), s.lat.basis_class(1));

  // e-tower: first center on C1 and C_{n+1}; the exceptional curve of step k
  // is the cycle component C_{n+1-k}; the last center sits on C2 only and
  // its exceptional curve is B1.
  for (int tower = 0; tower < 2; ++tower) {
    const bool bar = tower == 1;
    const char* exc = bar ? "f" : "e";
    const auto nm = [&](const char* base, int i) { return cname(base, i, bar); };
    PointSpec p1{{nm("C", 1), nm("C", n + 1)}, exc + std::to_string(1), nm("C", n)};
    s = s.blow_up(p1);
    for (int k = 2; k <= n - 1; ++k) {
      PointSpec pk{{nm("C", 1), nm("C", n + 2 - k)}, exc + std::to_string(k), nm("C", n + 1 - k)};
      s = s.blow_up(pk);
    }
    PointSpec pn{{nm("C", 2)}, exc + std::to_string(n), nm("B", 1)};
    s = s.blow_up(pn);
  }

  // B2 = A + (n-1)B - (e_1+...+e_{n-1}) - (f_1+...+f_n), and its conjugate.
  DivisorClass b2 = s.lat.basis_class(0) + Int(n - 1) * s.lat.basis_class(1);
  DivisorClass b2bar = b2;
  for (int i = 1; i <= n; ++i) {
    const std::size_t e_i = 1 + i;       // basis index of e_i
    const std::size_t f_i = 1 + n + i;   // basis index of f_i
    if (i <= n - 1) {
      b2.c[e_i] -= 1;
      b2bar.c[f_i] -= 1;
    }
    b2.c[f_i] -= 1;
    b2bar.c[e_i] -= 1;
  }
  s.track("B2", b2);
  s.track("Bb2", b2bar);

  SurfaceS out;
  out.n = n;
  out.surface = s;
  out.conj_perm.resize(s.lat.rank());
  out.conj_perm[0] = 0;
  out.conj_perm[1] = 1;
  for (int i = 1; i <= n; ++i) {
    out.conj_perm[1 + i] = 1 + n + i;
    out.conj_perm[1 + n + i] = 1 + i;
  }
  return out;
}

/// Checks every stated intersection datum of the configuration on S.
inline VerificationReport validate_configuration(const SurfaceS& s) {
  VerificationReport rep;
  const int n = s.n;
  const Lattice& L = s.lattice();
  const auto C = [&](int i, bool bar = false) {
    return L.curve(std::string("C") + (bar ? "b" : "") + std::to_string(i));
  };

  rep.check("K.square", Int(8 - 2 * n), L.k_squared());
  rep.check("rank.plus.Ksquare", Int(10), Int(L.rank()) + L.k_squared());

  // Cycle self-intersections (both halves).
  for (int bar = 0; bar < 2; ++bar) {
    const std::string tag = bar ? "Cb" : "C";
    rep.check(tag + "1.self", Int(1 - n), L.self_intersection(C(1, bar)));
    for (int i = 2; i <= n; ++i)
      rep.check(tag + std::to_string(i) + ".self", Int(-2), L.self_intersection(C(i, bar)));
    rep.check(tag + std::to_string(n + 1) + ".self", Int(-1),
              L.self_intersection(C(n + 1, bar)));
  }

  // Full cycle adjacency: consecutive components meet once, all other pairs
  // are disjoint.  Cycle order: C1..C_{n+1}, Cb1..Cb_{n+1}, back to C1.
  std::vector<DivisorClass> cycle;
  std::vector<std::string> cycle_names;
  for (int bar = 0; bar < 2; ++bar)
    for (int i = 1; i <= n + 1; ++i) {
      cycle.push_back(C(i, bar));
      cycle_names.push_back(std::string("C") + (bar ? "b" : "") + std::to_string(i));
    }
  const std::size_t len = cycle.size();
  for (std::size_t i = 0; i < len; ++i)
    for (std::size_t j = i + 1; j < len; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == len - 1);
      rep.check("cycle." + cycle_names[i] + "." + cycle_names[j], Int(adjacent ? 1 : 0),
                L.intersect(cycle[i], cycle[j]));
    }

  // The cycle is the anticanonical member.
  DivisorClass sum(L.rank());
  for (const auto& d : cycle) sum = sum + d;
  rep.check_bool("cycle.sum.is.minus.K", sum == -L.canonical);

  // B-curves.
  rep.check("B1.self", Int(-1), L.self_intersection(L.curve("B1")));
  rep.check("B2.self", Int(-1), L.self_intersection(L.curve("B2")));
  rep.check("B1.C2", Int(1), L.intersect(L.curve("B1"), C(2)));
  rep.check("Bb1.Cb2", Int(1), L.intersect(L.curve("Bb1"), C(2, true)));
  rep.check("B2.Bb1", Int(1), L.intersect(L.curve("B2"), L.curve("Bb1")));
  rep.check("Bb2.B1", Int(1), L.intersect(L.curve("Bb2"), L.curve("B1")));
  rep.check("B1.B2", Int(0), L.intersect(L.curve("B1"), L.curve("B2")));

  // All named curves are rational.
  for (const auto& [name, cls] : L.curves)
    rep.check("genus." + name, Int(0), L.virtual_genus(cls));

  // Conjugation: isometric involution compatible with the naming.
  for (const auto& [name, cls] : L.curves) {
    rep.check_bool("conj.name." + name,
                   s.conjugate(cls) == L.curve(SurfaceS::conjugate_name(name)));
    rep.check_bool("conj.involution." + name, s.conjugate(s.conjugate(cls)) == cls);
  }
  rep.check_bool("conj.fixes.K", s.conjugate(L.canonical) == L.canonical);
  bool isometry = true;
  for (std::size_t i = 0; i < L.rank() && isometry; ++i)
    for (std::size_t j = 0; j < L.rank(); ++j) {
      const auto bi = L.basis_class(i), bj = L.basis_class(j);
      if (L.intersect(s.conjugate(bi), s.conjugate(bj)) != L.intersect(bi, bj)) {
        isometry = false;
        break;
      }
    }
  rep.check_bool("conj.isometry", isometry);

  // Intersection form: unimodular of signature (1, rank-1).
  rep.check("gram.det.abs", Int(1), boost::multiprecision::abs(L.determinant()));
  const auto sig = L.signature();
  rep.check("signature.positive", 1, sig.first);
  rep.check("signature.negative", static_cast<int>(L.rank()) - 1, sig.second);

  return rep;
}

/// The minimal resolution T~ of the minitwistor surface: an abstract
/// rank-2n lattice on the declared basis
///   Gamma, f, s3+, d4..d_{n+1}, s2-, f1..f_{n-2},
/// with the pairing read off the conic-bundle configuration: Gamma and its
/// conjugate are disjoint sections of self-intersection (1-n); each of the
/// n fibers over lambda_2,...,lambda_{n+1} splits into two (-1)-sections
/// meeting once, the minus component meeting Gamma; the fiber over infinity
/// is the reduced chain s1+, f1, ..., f_{n-2} with f1..f_{n-3} the (-2)
/// string of the A_{n-3} resolution and the chain ends meeting the sections.
struct SurfaceT {
  int n = 0;
  Lattice lat;
  /// Reducible fibers as lists of tracked component names ("inf" fiber first).
  std::vector<std::vector<std::string>> fibers;
};

inline SurfaceT build_minitwistor_T(int n) {
  if (n < 3) throw std::invalid_argument("build_minitwistor_T requires n >= 3");
  SurfaceT t;
  t.n = n;
  Lattice& L = t.lat;

  L.basis = {"Gamma", "f", "s3+"};
  for (int i = 4; i <= n + 1; ++i) L.basis.push_back("d" + std::to_string(i));
  L.basis.push_back("s2-");
  for (int j = 1; j <= n - 2; ++j) L.basis.push_back("f" + std::to_string(j));
  const std::size_t rank = L.basis.size();

  const auto idx = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < L.basis.size(); ++i)
      if (L.basis[i] == name) return i;
    throw std::logic_error("missing basis element " + name);
  };
  const std::size_t iG = idx("Gamma"), iF = idx("f"), iS3 = idx("s3+"), iS2 = idx("s2-");

  L.gram.assign(rank, std::vector<Int>(rank, Int(0)));
  const auto set = [&](std::size_t i, std::size_t j, int v) {
    L.gram[i][j] = v;
    L.gram[j][i] = v;
  };
  set(iG, iG, 1 - n);
  set(iG, iF, 1);
  set(iG, iS2, 1);                       // Gamma meets the minus components
  set(iG, idx("f" + std::to_string(n - 2)), 1);  // chain end at the Gamma side
  set(iF, iF, 0);
  set(iS3, iS3, -1);
  set(iS2, iS2, -1);
  for (int i = 4; i <= n + 1; ++i) set(idx("d" + std::to_string(i)), idx("d" + std::to_string(i)), -1);
  for (int j = 1; j <= n - 2; ++j) {
    const std::size_t fj = idx("f" + std::to_string(j));
    set(fj, fj, j == n - 2 ? -1 : -2);
    if (j < n - 2) set(fj, idx("f" + std::to_string(j + 1)), 1);
  }

  // Tracked classes.
  const DivisorClass f = L.basis_class(iF);
  L.curves["f"] = f;
  L.curves["Gamma"] = L.basis_class(iG);
  L.curves["s2-"] = L.basis_class(iS2);
  L.curves["s2+"] = f - L.basis_class(iS2);
  L.curves["s3+"] = L.basis_class(iS3);
  L.curves["s3-"] = f - L.basis_class(iS3);
  for (int i = 4; i <= n + 1; ++i) {
    const DivisorClass d = L.basis_class(idx("d" + std::to_string(i)));
    L.curves["d" + std::to_string(i)] = d;        // = s_i^+
    L.curves["s" + std::to_string(i) + "+"] = d;
    L.curves["s" + std::to_string(i) + "-"] = f - d;
  }
  DivisorClass chain_sum(rank);
  for (int j = 1; j <= n - 2; ++j) {
    const DivisorClass fj = L.basis_class(idx("f" + std::to_string(j)));
    L.curves["f" + std::to_string(j)] = fj;
    chain_sum = chain_sum + fj;
  }
  L.curves["s1+"] = f - chain_sum;
  L.curves["s1-"] = L.curves["f" + std::to_string(n - 2)];

  // C0 = 2*Gamma + (n-1)f + s2- + sum k*f_k - s3+ - sum d_j, and
  // h = Gamma + s2- + sum k*f_k.
  DivisorClass c0 = Int(2) * L.curves["Gamma"] + Int(n - 1) * f + L.curves["s2-"];
  DivisorClass h = L.curves["Gamma"] + L.curves["s2-"];
  for (int j = 1; j <= n - 2; ++j) {
    const DivisorClass fj = L.basis_class(idx("f" + std::to_string(j)));
    c0 = c0 + Int(j) * fj;
    h = h + Int(j) * fj;
  }
  c0 = c0 - L.curves["s3+"];
  for (int i = 4; i <= n + 1; ++i) c0 = c0 - L.curves["d" + std::to_string(i)];
  L.curves["C0"] = c0;
  L.curves["h"] = h;

  // Canonical class from adjunction on the basis curves (every basis
  // element is an irreducible rational curve except f, which pairs to -2).
  std::vector<std::vector<Rational>> g(rank, std::vector<Rational>(rank));
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j) g[i][j] = Rational(L.gram[i][j]);
  std::vector<Rational> pairings(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    if (i == iF)
      pairings[i] = -2;
    else
      pairings[i] = Rational(-2 - L.gram[i][i]);  // rational curve: K.D = -2 - D^2
  }
  const auto kvec = solve_rational(g, pairings);
  L.canonical = DivisorClass(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    if (den(kvec[i]) != 1) throw std::logic_error("non-integral canonical class on T");
    L.canonical.c[i] = num(kvec[i]);
  }

  // Conjugate section Gammab: the unique class pairing like the second
  // section (disjoint from Gamma, degree 1 on fibers, meeting the plus
  // components and the s1+ end of the infinity chain).
  std::vector<Rational> gb(rank, Rational(0));
  gb[iG] = 0;
  gb[iF] = 1;
  gb[iS3] = 1;
  for (int i = 4; i <= n + 1; ++i) gb[idx("d" + std::to_string(i))] = 1;
  gb[iS2] = 0;
  for (int j = 1; j <= n - 2; ++j) gb[idx("f" + std::to_string(j))] = 0;
  const auto gbvec = solve_rational(g, gb);
  DivisorClass gammab(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    if (den(gbvec[i]) != 1) throw std::logic_error("non-integral conjugate section on T");
    gammab.c[i] = num(gbvec[i]);
  }
  L.curves["Gammab"] = gammab;

  // Reducible fibers: the chain over infinity plus the n split fibers.
  std::vector<std::string> inf_fiber = {"s1+"};
  for (int j = 1; j <= n - 2; ++j) inf_fiber.push_back("f" + std::to_string(j));
  t.fibers.push_back(inf_fiber);
  t.fibers.push_back({"s2+", "s2-"});
  t.fibers.push_back({"s3+", "s3-"});
  for (int i = 4; i <= n + 1; ++i)
    t.fibers.push_back({"s" + std::to_string(i) + "+", "s" + std::to_string(i) + "-"});

  return t;
}

/// Verifies the stated numerical facts about C0, h, and the T~ lattice.
inline VerificationReport check_C0_numbers(int n) {
  VerificationReport rep;
  const SurfaceT t = build_minitwistor_T(n);
  const Lattice& L = t.lat;
  const DivisorClass& c0 = L.curve("C0");

  rep.check("T.rank", Int(2 * n), Int(L.rank()));
  rep.check("T.c1.square", Int(10 - 2 * n), L.k_squared());
  rep.check("C0.square", Int(2 * n - 2), L.self_intersection(c0));
  rep.check("K.C0", Int(-4), L.intersect(L.canonical, c0));
  rep.check("C0.genus", Int(n - 2), L.virtual_genus(c0));
  rep.check("h.C0", Int(n - 1), L.intersect(L.curve("h"), c0));
  rep.check("C0.f", Int(2), L.intersect(c0, L.curve("f")));
  rep.check("C0.Gamma", Int(0), L.intersect(c0, L.curve("Gamma")));
  rep.check("C0.s2-", Int(1), L.intersect(c0, L.curve("s2-")));
  rep.check("C0.s3+", Int(1), L.intersect(c0, L.curve("s3+")));
  for (int i = 4; i <= n + 1; ++i)
    rep.check("C0.d" + std::to_string(i), Int(1),
              L.intersect(c0, L.curve("d" + std::to_string(i))));
  for (int j = 1; j <= n - 3; ++j)
    rep.check("C0.f" + std::to_string(j), Int(0),
              L.intersect(c0, L.curve("f" + std::to_string(j))));
  rep.check("C0.f" + std::to_string(n - 2), Int(1),
            L.intersect(c0, L.curve("f" + std::to_string(n - 2))));

  // Fiber bookkeeping: n+1 reducible fibers, 3n-1 components in total,
  // each component a (-1) or (-2) class, each fiber summing to f.
  rep.check("T.reducible.fibers", Int(n + 1), Int(t.fibers.size()));
  std::size_t components = 0;
  bool fiber_classes_ok = true;
  for (const auto& fiber : t.fibers) {
    components += fiber.size();
    DivisorClass sum(L.rank());
    for (const auto& name : fiber) {
      const auto& cls = L.curve(name);
      const Int self = L.self_intersection(cls);
      if (self != -1 && self != -2) fiber_classes_ok = false;
      if (L.virtual_genus(cls) != 0) fiber_classes_ok = false;
      sum = sum + cls;
    }
    if (!(sum == L.curve("f"))) fiber_classes_ok = false;
  }
  rep.check("T.fiber.components", Int(3 * n - 1), Int(components));
  rep.check_bool("T.fiber.classes", fiber_classes_ok);

  // Sections: degree one on fibers, disjoint, self-intersection 1-n.
  rep.check("Gamma.self", Int(1 - n), L.self_intersection(L.curve("Gamma")));
  rep.check("Gammab.self", Int(1 - n), L.self_intersection(L.curve("Gammab")));
  rep.check("Gamma.Gammab", Int(0), L.intersect(L.curve("Gamma"), L.curve("Gammab")));
  rep.check("Gamma.f", Int(1), L.intersect(L.curve("Gamma"), L.curve("f")));
  rep.check("Gammab.f", Int(1), L.intersect(L.curve("Gammab"), L.curve("f")));
  rep.check("f.square", Int(0), L.self_intersection(L.curve("f")));
  rep.check("f.K", Int(-2), L.intersect(L.curve("f"), L.canonical));

  // Lattice sanity: unimodular, signature (1, 2n-1).
  rep.check("T.gram.det.abs", Int(1), boost::multiprecision::abs(L.determinant()));
  const auto sig = L.signature();
  rep.check("T.signature.positive", 1, sig.first);
  rep.check("T.signature.negative", 2 * n - 1, sig.second);

  return rep;
}

}  // namespace twistor

#endif  // TWISTOR_LATTICE_HPP
