#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "errors.hpp"
#include "exactmat.hpp"
#include "hecke.hpp"
#include "lattice.hpp"
#include "qseries.hpp"
#include "theta.hpp"

using namespace sgl;

namespace {

FKey k1(long a) {
  FKey k;
  k.v[0] = a;
  return k;
}

QMat coset_matrix(const CosetRep& r) {
  int g = r.a.rows();
  QMat m(2 * g, 2 * g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      m.at(i, j) = Q(r.a.at(i, j));
      m.at(i, g + j) = Q(r.b.at(i, j));
      m.at(g + i, g + j) = Q(r.d.at(i, j));
    }
  return m;
}

const FourierExpansion& chi10_at_16() {
  static FourierExpansion f = chi10(16);
  return f;
}

}  // namespace

TEST_CASE("coset counts for the standard operators") {
  CHECK(coset_reps("T", 2, 1).degree() == 3);
  CHECK(coset_reps("T", 3, 1).degree() == 4);
  CHECK(coset_reps("T", 5, 1).degree() == 6);
  CHECK(coset_reps("T0", 2, 1).degree() == 6);
  CHECK(coset_reps("T1", 2, 1).degree() == 1);

  CHECK(coset_reps("T", 2, 2).degree() == 15);
  CHECK(coset_reps("T0", 2, 2).degree() == 120);
  CHECK(coset_reps("T1", 2, 2).degree() == 30);

  auto last = coset_reps("T2", 2, 2);
  REQUIRE(last.degree() == 1);
  CHECK(last.cosets[0].a == ZMat::identity(2) + ZMat::identity(2));
  CHECK(last.cosets[0].d == last.cosets[0].a);
  CHECK(last.cosets[0].b == ZMat(2, 2));

  CHECK_THROWS_AS(coset_reps("T3", 2, 2), ArgumentError);
  CHECK_THROWS_AS(coset_reps("T2", 2, 1), ArgumentError);
  CHECK_THROWS_AS(coset_reps("T", 4, 1), ArgumentError);
  CHECK_THROWS_AS(coset_reps("T", 2, 3), ArgumentError);
  CHECK_THROWS_AS(coset_reps("S", 2, 1), ArgumentError);
}

TEST_CASE("representative blocks satisfy the similitude relations") {
  struct Probe {
    const char* op;
    long p;
    int genus;
  };
  for (Probe pr : {Probe{"T", 2, 1}, Probe{"T", 3, 1}, Probe{"T0", 2, 1},
                   Probe{"T", 2, 2}, Probe{"T0", 2, 2}, Probe{"T1", 2, 2},
                   Probe{"T2", 2, 2}}) {
    auto e = coset_reps(pr.op, pr.p, pr.genus);
    for (const auto& r : e.cosets) {
      for (int i = 0; i < e.genus; ++i)
        for (int j = 0; j < i; ++j) CHECK(r.a.at(i, j) == 0);
      ZMat ad = r.a.transpose() * r.d;
      for (int i = 0; i < e.genus; ++i)
        for (int j = 0; j < e.genus; ++j)
          CHECK(ad.at(i, j) == (i == j ? Z(e.l) : Z(0)));
      CHECK((r.b.transpose() * r.d).is_symmetric());
      auto sim = similitude_factor(coset_matrix(r));
      REQUIRE(sim.has_value());
      CHECK(*sim == Q(e.l));
    }
  }
}

TEST_CASE("representatives are pairwise inequivalent") {
  struct Probe {
    const char* op;
    long p;
    int genus;
  };
  for (Probe pr :
       {Probe{"T", 2, 1}, Probe{"T", 3, 1}, Probe{"T", 2, 2}, Probe{"T1", 2, 2}}) {
    auto e = coset_reps(pr.op, pr.p, pr.genus);
    std::vector<QMat> ms;
    for (const auto& r : e.cosets) ms.push_back(coset_matrix(r));
    for (size_t i = 0; i < ms.size(); ++i) {
      QMat inv;
      REQUIRE(ms[i].inverse(inv));
      CHECK(is_integral_symplectic(ms[i] * inv));
      for (size_t j = i + 1; j < ms.size(); ++j) {
        QMat invj;
        REQUIRE(ms[j].inverse(invj));
        CHECK(!is_integral_symplectic(ms[i] * invj));
      }
    }
  }
}

TEST_CASE("discriminant form calibration") {
  auto dl = qs::delta_form(16);
  CHECK(dl.get(k1(2)) == 1);
  CHECK(dl.get(k1(4)) == -24);
  CHECK(dl.get(k1(6)) == 252);
  CHECK(dl.get(k1(8)) == -1472);
  CHECK(dl.get(k1(10)) == 4830);

  CHECK(eigenvalue(dl, "T", 2) == -24);
  CHECK(eigenvalue(dl, "T", 3) == 252);
  CHECK(eigenvalue(dl, "T", 5) == 4830);
}

TEST_CASE("eisenstein series eigenvalues") {
  auto th = theta_expansion(lattice_e8(), 1, 16);
  CHECK(eigenvalue(th, "T", 2) == 9);

  auto e4 = qs::eisenstein_g1(4, 8);
  for (const auto& [key, v] : e4.coeffs()) CHECK(th.get(key) == v);
  CHECK(eigenvalue(e4, "T", 2) == 9);
  CHECK(eigenvalue(e4, "T", 3) == 28);

  auto ew = eisenstein_witt(4, 2, 10);
  CHECK(eigenvalue(ew, "T", 2) == 45);
}

TEST_CASE("hecke image shrinks to the fully determined ball") {
  auto ew = eisenstein_witt(4, 2, 8);
  FourierExpansion img = hecke_apply(ew, "T", 2);
  CHECK(img.trace_bound() == 3);
  CHECK(eigenvalue(ew, "T", 2) == 45);

  FourierExpansion wide = hecke_apply(eisenstein_witt(4, 2, 10), "T", 2);
  CHECK(wide.trace_bound() == 5);
  for (const auto& [key, value] : img.coeffs()) CHECK(wide.get(key) == value);
  for (const auto& [key, value] : wide.coeffs()) {
    if (key_trace(key, 2) <= img.trace_bound()) CHECK(img.get(key) == value);
  }

  CHECK_THROWS_AS(eigenvalue(chi10(6), "T", 2), TruncationError);
}

TEST_CASE("genus 2 cusp form eigenvalues") {
  CHECK(eigenvalue(chi10(8), "T", 2) == 240);
  CHECK(eigenvalue(chi10_at_16(), "T1", 2) == -153600);
  CHECK(eigenvalue(chi10_at_16(), "T2", 2) == 16384);
  CHECK(eigenvalue(chi10(12), "T", 3) == 21960);
}

TEST_CASE("eigenvalue guards") {
  FourierExpansion zero(1, Q(12), 1, 20);
  CHECK_THROWS_AS(eigenvalue(zero, "T", 2), TruncationError);

  FourierExpansion fake(1, Q(4), 1, 8);
  for (long a = 2; a <= 8; a += 2) fake.set(k1(a), Q(1));
  CHECK_THROWS_AS(eigenvalue(fake, "T", 2), InconsistencyError);

  ThetaCharacteristic ch;
  ch.upper = {0};
  ch.lower = {0};
  CHECK_THROWS_AS(hecke_apply(theta_constant(ch, 8), "T", 2), ArgumentError);

  FourierExpansion half(1, Q(1, 2), 1, 8);
  CHECK_THROWS_AS(hecke_apply(half, "T", 2), ArgumentError);
}

TEST_CASE("satake images of the generators") {
  auto unit = satake_Q(hecke_identity(2, 2));
  REQUIRE(unit.terms.size() == 1);
  CHECK(unit.terms.at({0, 0, 0, 0}) == 1);

  auto tg1 = satake_Q(coset_reps("T", 2, 1));
  REQUIRE(tg1.terms.size() == 2);
  CHECK(tg1.terms.at({1, 0, 0, 0}) == 1);
  CHECK(tg1.terms.at({1, 1, 0, 0}) == 1);

  auto pg1 = satake_Q(coset_reps("T1", 2, 1));
  REQUIRE(pg1.terms.size() == 1);
  CHECK(pg1.terms.at({2, 1, 0, 0}) == Q(1, 2));

  auto pg2 = satake_Q(coset_reps("T2", 2, 2));
  REQUIRE(pg2.terms.size() == 1);
  CHECK(pg2.terms.at({2, 1, 1, 0}) == Q(1, 8));

  struct Probe {
    const char* op;
    long p;
    int genus;
  };
  for (Probe pr : {Probe{"T", 2, 1}, Probe{"T", 3, 1}, Probe{"T0", 2, 1},
                   Probe{"T", 2, 2}, Probe{"T0", 2, 2}, Probe{"T1", 2, 2},
                   Probe{"T2", 2, 2}}) {
    auto q = satake_Q(coset_reps(pr.op, pr.p, pr.genus));
    for (int j = 1; j <= pr.genus; ++j) CHECK(weyl_reflect(q, j) == q);
    if (pr.genus == 2) CHECK(weyl_swap(q, 1, 2) == q);
  }
}

TEST_CASE("satake transform is multiplicative") {
  struct Probe {
    const char* op1;
    const char* op2;
    long p;
    int genus;
  };
  for (Probe pr : {Probe{"T", "T", 2, 1}, Probe{"T", "T", 3, 1},
                   Probe{"T", "T0", 2, 1}, Probe{"T", "T", 2, 2},
                   Probe{"T", "T2", 2, 2}}) {
    auto e1 = coset_reps(pr.op1, pr.p, pr.genus);
    auto e2 = coset_reps(pr.op2, pr.p, pr.genus);
    CHECK(satake_Q(hecke_multiply(e1, e2)) ==
          satake_Q(e1).multiply(satake_Q(e2)));
  }
}

TEST_CASE("operator products") {
  auto t2 = coset_reps("T", 2, 1);
  auto sq = hecke_multiply(t2, t2);
  CHECK(sq.degree() == 9);
  REQUIRE(sq.cosets.size() == 7);
  std::vector<long> mults;
  for (const auto& r : sq.cosets) mults.push_back(r.mult);
  std::sort(mults.begin(), mults.end());
  CHECK(mults == std::vector<long>{1, 1, 1, 1, 1, 1, 3});

  auto dl = qs::delta_form(12);
  auto twice = hecke_apply(hecke_apply(dl, "T", 2), "T", 2);
  auto once = hecke_apply_element(dl, sq);
  CHECK(once.trace_bound() == twice.trace_bound());
  CHECK(once.coeffs() == twice.coeffs());

  auto viaunit = hecke_apply_element(dl, hecke_multiply(t2, hecke_identity(1, 2)));
  auto direct = hecke_apply(dl, "T", 2);
  CHECK(viaunit.coeffs() == direct.coeffs());

  CHECK_THROWS_AS(hecke_multiply(t2, coset_reps("T", 3, 1)), ArgumentError);
  CHECK_THROWS_AS(hecke_multiply(t2, coset_reps("T", 2, 2)), ArgumentError);
}

TEST_CASE("operators at distinct primes commute on expansions") {
  auto dl = qs::delta_form(12);
  auto ab = hecke_apply(hecke_apply(dl, "T", 2), "T", 3);
  auto ba = hecke_apply(hecke_apply(dl, "T", 3), "T", 2);
  CHECK(ab.trace_bound() == ba.trace_bound());
  CHECK(ab.coeffs() == ba.coeffs());

  auto th = theta_expansion(lattice_e8(), 1, 24);
  auto tab = hecke_apply(hecke_apply(th, "T", 2), "T", 3);
  auto tba = hecke_apply(hecke_apply(th, "T", 3), "T", 2);
  CHECK(tab.coeffs() == tba.coeffs());
}

TEST_CASE("corank counts") {
  for (long p : {2L, 3L, 5L, 7L}) {
    CHECK(m_count(1, 1, p) == 1);
    CHECK(m_count(1, 0, p) == p - 1);
    CHECK(m_count(2, 1, p) == p * p - 1);
  }
  long total2 = 0;
  for (int i = 0; i <= 2; ++i) total2 += m_count(2, i, 3);
  CHECK(total2 == 27);
  long total3 = 0;
  for (int i = 0; i <= 3; ++i) total3 += m_count(3, i, 2);
  CHECK(total3 == 64);
  CHECK(m_count(3, 3, 2) == 1);

  CHECK_THROWS_AS(m_count(4, 0, 2), ArgumentError);
  CHECK_THROWS_AS(m_count(2, 3, 2), ArgumentError);
  CHECK_THROWS_AS(m_count(2, 0, 11), ArgumentError);
}

TEST_CASE("satake parameter extraction") {
  auto sols = satake_solve(10, 2, Q(240), Q(-153600), Q(16384));
  REQUIRE(sols.size() == 2);
  CHECK(sols[0].sigma == 65536);
  CHECK(sols[0].s2e1 == -135168);
  CHECK(sols[1].sigma == 262144);
  CHECK(sols[1].s2e1 == -270336);
  for (const auto& s : sols) {
    CHECK(s.lambda1 == 240);
    CHECK(s.s2e2 == 131072);  // p^(2k-3)
  }

  CHECK_THROWS_AS(satake_solve(10, 2, Q(240), Q(-153600), Q(12345)),
                  InconsistencyError);
  CHECK_THROWS_AS(satake_solve(10, 2, Q(241), Q(-153600), Q(16384)),
                  InconsistencyError);
  CHECK_THROWS_AS(satake_solve(10, 4, Q(240), Q(-153600), Q(16384)),
                  ArgumentError);

  auto g1 = satake_solve_g1(12, 2, Q(-24));
  CHECK(g1.lambda1 == -24);
  CHECK(g1.s2e1 == 2048);
}
