#include "exactmat.hpp"

#include "doctest.h"
#include "errors.hpp"

using namespace sgl;

namespace {

QMat qm(int n, std::initializer_list<long> vals) {
  QMat m(n, n);
  auto it = vals.begin();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = Q(*it++);
  return m;
}

ZMat zm(int n, std::initializer_list<long> vals) {
  ZMat m(n, n);
  auto it = vals.begin();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = Z(*it++);
  return m;
}

}  // namespace

TEST_CASE("rational parsing round trip") {
  CHECK(q_to_string(q_from_string("-5/3")) == "-5/3");
  CHECK(q_to_string(q_from_string("4/2")) == "2");
  CHECK(q_to_string(Q(0)) == "0");
  CHECK_THROWS_AS(q_from_string("1.5"), ArgumentError);
  CHECK_THROWS_AS(q_from_string(""), ArgumentError);
}

TEST_CASE("determinant and inverse") {
  QMat m = qm(2, {5, 4, 4, 5});
  CHECK(m.det() == Q(9));
  QMat inv;
  REQUIRE(m.inverse(inv));
  CHECK(m * inv == QMat::identity(2));
  CHECK(qm(2, {1, 1, 1, 1}).det() == Q(0));
  QMat junk;
  CHECK_FALSE(qm(2, {1, 1, 1, 1}).inverse(junk));
}

TEST_CASE("similitude factor examples") {
  for (int g = 1; g <= 3; ++g) {
    auto l = similitude_factor(j_mat(g));
    REQUIRE(l.has_value());
    CHECK(*l == Q(1));
  }
  for (long p : {2L, 3L, 5L}) {
    QMat m = QMat::identity(4);
    m.at(2, 2) = p;
    m.at(3, 3) = p;
    auto l = similitude_factor(m);
    REQUIRE(l.has_value());
    CHECK(*l == Q(p));
  }
  CHECK_FALSE(similitude_factor(qm(2, {1, 1, 1, 1})).has_value());
  CHECK_THROWS_AS(similitude_factor(QMat::identity(3)), ArgumentError);
}

TEST_CASE("similitude factor is multiplicative") {
  SymplecticSampler s(2, 7);
  for (int t = 0; t < 20; ++t) {
    SimilitudeMatrix a = s.next(4), b = s.next(4);
    auto lab = similitude_factor(a.m * b.m);
    REQUIRE(lab.has_value());
    CHECK(*lab == a.l * b.l);
  }
}

TEST_CASE("action basics") {
  SiegelPoint i2(QMat::zero(2), QMat::identity(2));
  SimilitudeMatrix id(QMat::identity(4));
  CHECK(act(id, i2) == i2);

  QMat trans = QMat::identity(4);
  trans.at(0, 2) = 3;
  trans.at(1, 3) = -1;
  SiegelPoint moved = act(SimilitudeMatrix(trans), i2);
  CHECK(moved.y == i2.y);
  CHECK(moved.x.at(0, 0) == Q(3));
  CHECK(moved.x.at(1, 1) == Q(-1));
  CHECK(moved.x.at(0, 1) == Q(0));

  SimilitudeMatrix inv(j_mat(2));
  CHECK(act(inv, i2) == i2);
}

TEST_CASE("action is a group action") {
  for (int g : {1, 2}) {
    QMat x(g, g), y = QMat::identity(g);
    x.at(0, 0) = Q(1, 3);
    y.at(0, 0) = Q(7, 5);
    SiegelPoint pt(x, y);
    SymplecticSampler s(g, 11);
    for (int t = 0; t < 15; ++t) {
      SimilitudeMatrix a = s.next(5), b = s.next(5);
      SiegelPoint lhs = act(SimilitudeMatrix(a.m * b.m), pt);
      SiegelPoint rhs = act(a, act(b, pt));
      CHECK(lhs == rhs);
      CHECK(is_positive_definite(rhs.y));
    }
  }
}

TEST_CASE("gl transform") {
  QMat y = qm(2, {5, 4, 4, 5});
  ZMat u = zm(2, {1, 0, -1, 1});
  QMat out = gl_transform(y, u);
  CHECK(out == qm(2, {5, -1, -1, 2}));
  CHECK(gl_transform(y, ZMat::identity(2)) == y);

  ZMat perm(2, 2);
  perm.at(0, 1) = 1;
  perm.at(1, 0) = 1;
  QMat a = qm(2, {1, 0, 0, 4});
  CHECK(gl_transform(a, perm) == qm(2, {4, 0, 0, 1}));

  ZMat bad = zm(2, {2, 0, 0, 1});
  CHECK_THROWS_AS(gl_transform(y, bad), ArgumentError);
}

TEST_CASE("positive definiteness") {
  CHECK(is_positive_definite(QMat::identity(3)));
  CHECK(is_positive_definite(qm(2, {2, 1, 1, 2})));
  CHECK_FALSE(is_positive_definite(qm(2, {1, 2, 2, 1})));
  CHECK_FALSE(is_positive_definite(QMat::zero(2)));
}

TEST_CASE("even gram validation") {
  CHECK_NOTHROW(EvenGramMat(zm(2, {2, 1, 1, 2})));
  CHECK_THROWS_AS(EvenGramMat(zm(2, {1, 0, 0, 2})), ArgumentError);
  CHECK_THROWS_AS(EvenGramMat(zm(2, {2, 1, 0, 2})), ArgumentError);
}

TEST_CASE("unimodular completion") {
  std::vector<Z> w = {Z(15), Z(10), Z(6)};
  ZMat v = unimodular_with_first_row(w);
  Z d = v.det();
  CHECK((d == 1 || d == -1));
  for (int j = 0; j < 3; ++j) CHECK(v.at(0, j) == w[j]);
  CHECK_THROWS_AS(unimodular_with_first_row({Z(2), Z(4)}), ArgumentError);
}

TEST_CASE("elementary divisors") {
  ZMat m = zm(2, {2, 0, 0, 4});
  auto d = m.elementary_divisors();
  CHECK(d[0] == 2);
  CHECK(d[1] == 4);
  ZMat mm = zm(2, {0, 2, 2, 0});
  auto d2 = mm.elementary_divisors();
  CHECK(d2[0] == 2);
  CHECK(d2[1] == 2);
}
