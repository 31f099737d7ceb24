/// Unit tests for the blow-up lattice engine and the two model surfaces.
#include "twistor/lattice.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace twistor;

TEST_CASE("base quadric and blow-up bookkeeping") {
  BlowupSurface s = BlowupSurface::new_base_quadric();
  CHECK(s.lat.rank() == 2);
  CHECK(s.lat.k_squared() == 8);
  s.track("L", s.lat.basis_class(0));
  s = s.blow_up({{"L"}, "e1", "E"});
  CHECK(s.lat.rank() == 3);
  CHECK(s.lat.k_squared() == 7);
  CHECK(s.lat.self_intersection(s.lat.curve("L")) == -1);
  CHECK(s.lat.self_intersection(s.lat.curve("E")) == -1);
  CHECK(s.lat.intersect(s.lat.curve("L"), s.lat.curve("E")) == 1);
  CHECK_THROWS_AS(s.blow_up({{"nope"}, "e2", ""}), std::invalid_argument);
}

TEST_CASE("virtual genus and integrality guard") {
  const SurfaceS s = build_surface_S(4);
  const Lattice& L = s.lattice();
  // -K is the cycle class: genus 1 + (K^2 + K.(-K))/2 = 1.
  CHECK(L.virtual_genus(-L.canonical) == 1);
  // A + B on the quadric part: conic, genus 0.
  CHECK(L.virtual_genus(L.basis_class(0) + L.basis_class(1)) == 0);
  // A class with odd D^2 + K.D cannot be curve-like.
  DivisorClass odd(L.rank());
  odd.c[0] = 1;  // A: A^2 = 0, K.A = -2 -> fine; perturb with e1
  odd.c[2] = 1;  // (A + e1)^2 = -1, K.(A+e1) = -2 + ... check parity below
  // (A+e1)^2 + K.(A+e1) = (0-1) + (-2+1) = -2: fine; build a genuinely odd one.
  DivisorClass half(L.rank());
  half.c[2] = 1;
  half.c[3] = 1;  // (e1+e2)^2 = -2, K.(e1+e2) = 2 -> 0: still even.
  // Use 2A + e1: 4*0 - 1 = -1, K.D = -4 + 1 = -3 -> sum -4 even. Try A+B+e1:
  DivisorClass d(L.rank());
  d.c[0] = 1;
  d.c[2] = 1;  // (A+e1)... compute directly instead:
  bool threw = false;
  for (std::size_t i = 0; i < L.rank() && !threw; ++i) {
    DivisorClass t(L.rank());
    t.c[i] = 1;
    t.c[(i + 1) % L.rank()] = 2;
    try {
      (void)L.virtual_genus(t);
    } catch (const std::domain_error&) {
      threw = true;
    }
  }
  // Parity of D^2 + K.D is always even on a smooth surface lattice
  // (Riemann-Roch), so no combination throws:
  CHECK_FALSE(threw);
}

TEST_CASE("surface S configuration validates for all n") {
  for (int n = 3; n <= 9; ++n) {
    const SurfaceS s = build_surface_S(n);
    const VerificationReport rep = validate_configuration(s);
    INFO("n = " << n << "\n" << rep.to_text());
    CHECK(rep.all_pass());
    CHECK(s.lattice().rank() == 2u + 2u * static_cast<unsigned>(n));
  }
  CHECK_THROWS_AS(build_surface_S(2), std::invalid_argument);
}

TEST_CASE("surface S explicit classes at n=3") {
  const SurfaceS s = build_surface_S(3);
  const Lattice& L = s.lattice();
  // Basis order: A, B, e1, e2, e3, f1, f2, f3.
  CHECK(L.curve("C1").c == std::vector<Int>{1, 0, -1, -1, 0, 0, 0, 0});
  CHECK(L.curve("C2").c == std::vector<Int>{0, 0, 0, 1, -1, 0, 0, 0});
  CHECK(L.curve("C3").c == std::vector<Int>{0, 0, 1, -1, 0, 0, 0, 0});
  CHECK(L.curve("C4").c == std::vector<Int>{0, 1, -1, 0, 0, 0, 0, 0});
  CHECK(L.curve("B1").c == std::vector<Int>{0, 0, 0, 0, 1, 0, 0, 0});
  CHECK(L.curve("B2").c == std::vector<Int>{1, 2, -1, -1, 0, -1, -1, -1});
  CHECK(L.curve("Cb1").c == std::vector<Int>{1, 0, 0, 0, 0, -1, -1, 0});
  CHECK(L.canonical.c == std::vector<Int>{-2, -2, 1, 1, 1, 1, 1, 1});
}

TEST_CASE("B2 is the unique class with its intersection profile") {
  // Enumeration oracle: B2 is the unique class with
  //   X^2 = -1, X.K = -1, X.B1 = 0, X.Bb1 = 1,
  //   X.C2 = 1 and X disjoint from every other cycle curve,
  // within the search box |a|,|b| <= n, 0 <= m_i, m'_i <= 2 for
  // X = aA + bB - sum m_i e_i - sum m'_i f_i.
  for (int n = 3; n <= 5; ++n) {
    const SurfaceS s = build_surface_S(n);
    const Lattice& L = s.lattice();
    std::vector<DivisorClass> found;
    std::vector<unsigned> m(2 * static_cast<unsigned>(n), 0);
    for (int a = -n; a <= n; ++a)
      for (int b = -n; b <= n; ++b) {
        // iterate multi-index m over {0,1,2}^{2n}
        std::fill(m.begin(), m.end(), 0u);
        while (true) {
          DivisorClass x(L.rank());
          x.c[0] = a;
          x.c[1] = b;
          for (std::size_t i = 0; i < m.size(); ++i) x.c[2 + i] = -Int(m[i]);
          if (L.self_intersection(x) == -1 && L.intersect(x, L.canonical) == -1 &&
              L.intersect(x, L.curve("B1")) == 0 && L.intersect(x, L.curve("Bb1")) == 1) {
            bool profile = true;
            for (int i = 1; i <= n + 1 && profile; ++i) {
              const Int expected_c = (i == 2) ? 1 : 0;
              if (L.intersect(x, L.curve("C" + std::to_string(i))) != expected_c ||
                  L.intersect(x, L.curve("Cb" + std::to_string(i))) != 0)
                profile = false;
            }
            if (profile) found.push_back(x);
          }
          std::size_t k = 0;
          while (k < m.size() && m[k] == 2) m[k++] = 0;
          if (k == m.size()) break;
          ++m[k];
        }
      }
    REQUIRE(found.size() == 1);
    CHECK(found[0] == L.curve("B2"));
  }
}

TEST_CASE("conjugation exchanges the towers") {
  const SurfaceS s = build_surface_S(5);
  const Lattice& L = s.lattice();
  CHECK(s.conjugate(L.curve("C1")) == L.curve("Cb1"));
  CHECK(s.conjugate(L.curve("B2")) == L.curve("Bb2"));
  CHECK(s.conjugate(L.canonical) == L.canonical);
  CHECK(SurfaceS::conjugate_name("C3") == "Cb3");
  CHECK(SurfaceS::conjugate_name("Cb3") == "C3");
  CHECK(SurfaceS::conjugate_name("B1") == "Bb1");
}

TEST_CASE("determinant and signature helpers") {
  CHECK(integer_determinant({{2, 0}, {0, 3}}) == 6);
  CHECK(integer_determinant({{0, 1}, {1, 0}}) == -1);
  CHECK(integer_determinant({{1, 2}, {2, 4}}) == 0);
  CHECK(symmetric_signature({{0, 1}, {1, 0}}) == std::pair<int, int>{1, 1});
  CHECK(symmetric_signature({{-1, 0}, {0, -2}}) == std::pair<int, int>{0, 2});
  CHECK(symmetric_signature({{3}}) == std::pair<int, int>{1, 0});
  CHECK_THROWS_AS(symmetric_signature({{0, 0}, {0, 5}}), std::domain_error);
}

TEST_CASE("minitwistor lattice T for all n") {
  for (int n = 3; n <= 9; ++n) {
    const VerificationReport rep = check_C0_numbers(n);
    INFO("n = " << n << "\n" << rep.to_text());
    CHECK(rep.all_pass());
  }
  CHECK_THROWS_AS(build_minitwistor_T(2), std::invalid_argument);
}

TEST_CASE("minitwistor T structural details at n=5") {
  const SurfaceT t = build_minitwistor_T(5);
  const Lattice& L = t.lat;
  CHECK(L.rank() == 10);
  // Fibers: infinity chain of n-1 = 4 components, then n = 5 split fibers.
  REQUIRE(t.fibers.size() == 6);
  CHECK(t.fibers[0].size() == 4);
  for (std::size_t k = 1; k < t.fibers.size(); ++k) CHECK(t.fibers[k].size() == 2);
  // The (-2) string f1..f_{n-3} and the chain ends.
  CHECK(L.self_intersection(L.curve("f1")) == -2);
  CHECK(L.self_intersection(L.curve("f2")) == -2);
  CHECK(L.self_intersection(L.curve("f3")) == -1);
  CHECK(L.intersect(L.curve("f1"), L.curve("f2")) == 1);
  CHECK(L.intersect(L.curve("f2"), L.curve("f3")) == 1);
  CHECK(L.intersect(L.curve("f1"), L.curve("f3")) == 0);
  CHECK(L.self_intersection(L.curve("s1+")) == -1);
  CHECK(L.intersect(L.curve("s1+"), L.curve("f1")) == 1);
  // Sections touch the correct chain ends.
  CHECK(L.intersect(L.curve("Gamma"), L.curve("f3")) == 1);
  CHECK(L.intersect(L.curve("Gammab"), L.curve("s1+")) == 1);
  CHECK(L.intersect(L.curve("Gamma"), L.curve("s1+")) == 0);
  CHECK(L.intersect(L.curve("Gammab"), L.curve("f3")) == 0);
}
