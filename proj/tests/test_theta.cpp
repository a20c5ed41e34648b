#include <map>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "fourier.hpp"
#include "lattice.hpp"
#include "theta.hpp"

using namespace sgl;

namespace {

FKey k1(long a) {
  FKey k;
  k.v[0] = a;
  return k;
}

FKey k2(long a, long b, long c) {
  FKey k;
  k.v[0] = a;
  k.v[1] = b;
  k.v[2] = c;
  return k;
}

FKey k3(long a, long b, long c, long d, long e, long f) {
  FKey k;
  k.v = {a, b, c, d, e, f};
  return k;
}

const FourierExpansion& chi10_at_10() {
  static const FourierExpansion f = chi10(10);
  return f;
}

const FourierExpansion& chi10_at_4() {
  static const FourierExpansion f = chi10(4);
  return f;
}

}  // namespace

TEST_CASE("root lattice construction") {
  const auto& e8 = lattice_e8();
  CHECK(e8.rank == 8);
  CHECK(e8.unimodular);
  CHECK(e8.gram.is_symmetric());

  const auto& d16 = lattice_d16plus();
  CHECK(d16.rank == 16);
  CHECK(d16.unimodular);

  const auto& ee = lattice_e8e8();
  CHECK(ee.rank == 16);
  CHECK(ee.unimodular);
}

TEST_CASE("short vector counts") {
  CHECK(short_vectors(lattice_e8(), 2).size() == 241);
  CHECK(short_vectors(lattice_e8(), 0).size() == 1);
  CHECK(short_vectors(lattice_d16plus(), 2).size() == 481);
  CHECK(short_vectors(lattice_e8e8(), 2).size() == 481);

  auto serial = short_vectors(lattice_e8(), 4, false);
  auto parallel = short_vectors(lattice_e8(), 4, true);
  CHECK(serial == parallel);
  CHECK(serial.size() == 1 + 240 + 2160);
}

TEST_CASE("representation numbers") {
  ZMat t1(1, 1);
  t1.at(0, 0) = 2;
  CHECK(rep_number(lattice_e8(), t1) == 240);

  ZMat t2(2, 2);
  t2.at(0, 0) = 2;
  t2.at(1, 1) = 2;
  CHECK(rep_number(lattice_e8(), t2) == 30240);

  ZMat bad(2, 2);
  bad.at(0, 1) = 1;
  CHECK_THROWS_AS(rep_number(lattice_e8(), bad), ArgumentError);

  ZMat t3(3, 3);
  CHECK_THROWS_AS(rep_number(lattice_e8(), t3), ArgumentError);
  CHECK(rep_number(lattice_e8(), t3, true) == 1);
}

TEST_CASE("genus 1 theta series of E8") {
  auto th = theta_expansion(lattice_e8(), 1, 6);
  CHECK(th.weight() == Q(4));
  CHECK(th.get(k1(0)) == 1);
  CHECK(th.get(k1(2)) == 240);
  CHECK(th.get(k1(4)) == 2160);
  CHECK(th.get(k1(6)) == 6720);
}

TEST_CASE("witt coincidence in genus 2") {
  auto a = theta_expansion(lattice_e8e8(), 2, 4);
  auto b = theta_expansion(lattice_d16plus(), 2, 4);
  CHECK(a.coeffs() == b.coeffs());
  // 480 * (126 same-block + 240 cross-block) orthogonal root pairs.
  CHECK(a.get(k2(2, 0, 2)) == 175680);
  CHECK(a.gl_coefficient_invariance());

  auto e1 = theta_expansion(lattice_e8(), 1, 8);
  auto sq = e1.multiply(e1);
  auto ee1 = theta_expansion(lattice_e8e8(), 1, 8);
  CHECK(sq.coeffs() == ee1.coeffs());
  CHECK(sq.weight() == Q(8));
}

TEST_CASE("theta expansion rejects genus 3") {
  CHECK_THROWS_AS(theta_expansion(lattice_e8(), 3, 2), ArgumentError);
}

TEST_CASE("even characteristic counts") {
  CHECK(even_characteristics(1).size() == 3);
  CHECK(even_characteristics(2).size() == 10);
  CHECK(even_characteristics(3).size() == 36);
  for (const auto& ch : even_characteristics(2)) CHECK(ch.is_even());
}

TEST_CASE("genus 1 theta constants") {
  ThetaCharacteristic c00{{0}, {0}};
  auto t = theta_constant(c00, 4);
  CHECK(t.scale() == 4);
  CHECK(t.weight() == Q(1, 2));
  CHECK(t.get(k1(0)) == 1);
  CHECK(t.get(k1(4)) == 2);
  CHECK(t.get(k1(16)) == 2);
  CHECK(t.coeffs().size() == 3);

  ThetaCharacteristic c01{{0}, {1}};
  auto t4 = theta_constant(c01, 4);
  CHECK(t4.get(k1(0)) == 1);
  CHECK(t4.get(k1(4)) == -2);
  CHECK(t4.get(k1(16)) == 2);

  ThetaCharacteristic c10{{1}, {0}};
  auto t2 = theta_constant(c10, 4);
  CHECK(t2.get(k1(1)) == 2);
  CHECK(t2.get(k1(9)) == 2);
  CHECK(t2.coeffs().size() == 2);

  ThetaCharacteristic odd{{1}, {1}};
  CHECK(theta_constant(odd, 4).is_zero());
}

TEST_CASE("fourier container validation") {
  FourierExpansion f(2, Q(10), 1, 6);
  CHECK_THROWS_AS(f.set(k2(2, 1, 1), Q(1)), ArgumentError);   // odd diagonal
  CHECK_THROWS_AS(f.set(k2(2, 3, 2), Q(1)), ArgumentError);   // not psd
  CHECK_THROWS_AS(f.set(k2(4, 0, 4), Q(1)), ArgumentError);   // beyond bound
  f.set(k2(2, 1, 2), Q(1, 4));
  CHECK(f.get(k2(2, 1, 2)) == Q(1, 4));
  f.set(k2(2, 1, 2), Q(0));
  CHECK(f.is_zero());

  FourierExpansion g(2, Q(5), 1, 6);
  g.set(k2(2, 0, 2), Q(1));
  CHECK_THROWS_AS(f.add(g), ArgumentError);  // weight mismatch

  FourierExpansion s4(2, Q(1, 2), 4, 6);
  s4.set(k2(1, 0, 1), Q(1));
  CHECK_THROWS_AS(s4.rescaled_to_unit(), InconsistencyError);
  CHECK_THROWS_AS(f.multiply(s4), ArgumentError);  // scale mismatch
}

TEST_CASE("support predicates") {
  FourierExpansion f(2, Q(0), 1, 4);
  f.set(k2(0, 0, 0), Q(1));
  f.set(k2(2, 0, 0), Q(3));
  CHECK(f.is_singular_support());
  CHECK(!f.is_cuspidal_support());

  FourierExpansion g(2, Q(0), 1, 4);
  g.set(k2(2, 1, 2), Q(1));
  CHECK(g.is_cuspidal_support());
  CHECK(!g.is_singular_support());
}

TEST_CASE("chi10 frozen coefficients") {
  const auto& f = chi10_at_10();
  CHECK(f.genus() == 2);
  CHECK(f.scale() == 1);
  CHECK(f.weight() == Q(10));
  CHECK(f.is_cuspidal_support());
  CHECK(f.gl_coefficient_invariance());

  std::map<FKey, Q> expect;
  auto both = [&](long a, long b, long c, Q v) {
    expect[k2(a, b, c)] = v;
    expect[k2(a, -b, c)] = v;
    expect[k2(c, b, a)] = v;
    expect[k2(c, -b, a)] = v;
  };
  both(2, 1, 2, Q(-1, 4));
  both(2, 0, 2, Q(1, 2));
  both(2, 1, 4, Q(4));
  both(2, 0, 4, Q(-9));
  both(2, 2, 4, Q(1, 2));
  both(4, 0, 4, Q(-8));
  both(4, 1, 4, Q(60));
  both(4, 2, 4, Q(-60));
  both(4, 3, 4, Q(4));
  both(2, 0, 6, Q(68));
  both(2, 1, 6, Q(-99, 4));
  both(2, 2, 6, Q(-9));
  both(2, 3, 6, Q(-1, 4));

  for (const auto& [k, v] : expect) {
    CAPTURE(k.v[0]);
    CAPTURE(k.v[1]);
    CAPTURE(k.v[2]);
    CHECK(f.get(k) == v);
  }
  // Nothing else below trace 8.
  for (const auto& [k, v] : f.coeffs()) {
    if (key_trace(k, 2) <= 8) CHECK(expect.count(k) == 1);
  }

  for (const auto& [k, v] : f.coeffs()) {
    CHECK(Q(Q(4) * v).get_den() == 1);
  }
}

TEST_CASE("chi10 maass coefficient relation") {
  const auto& f = chi10_at_10();
  Q lhs = f.get(k2(4, 2, 4));
  CHECK(lhs == Q(-60));
  Q rhs = f.get(k2(8, 2, 2)) + Q(512) * f.get(k2(2, 1, 2));
  CHECK(lhs == rhs);
}

TEST_CASE("chi10 matches the serial reference pipeline") {
  auto fast = chi10(4, true);
  auto evens = even_characteristics(2);
  FourierExpansion acc = theta_constant(evens[0], 4);
  acc = acc.multiply_reference(theta_constant(evens[0], 4));
  for (size_t i = 1; i < evens.size(); ++i) {
    auto th = theta_constant(evens[i], 4);
    acc = acc.multiply_reference(th).multiply_reference(th);
  }
  auto slow = acc.scalar_mul(Q(-1, 16384)).rescaled_to_unit();
  CHECK(fast.coeffs() == slow.coeffs());
  CHECK_THROWS_AS(chi10(1), ArgumentError);
}

TEST_CASE("chi10 truncation consistency across bounds") {
  const auto& small = chi10_at_4();
  const auto& big = chi10_at_10();
  for (const auto& [k, v] : small.coeffs()) CHECK(big.get(k) == v);
  for (const auto& [k, v] : big.coeffs()) {
    if (key_trace(k, 2) <= 4) CHECK(small.get(k) == v);
  }
}

TEST_CASE("genus 3 product vanishes below its first stratum") {
  auto f = cusp_product_g3(4);
  CHECK(f.genus() == 3);
  CHECK(f.weight() == Q(18));
  CHECK(f.is_zero());
  CHECK_THROWS_AS(cusp_product_g3(5), ArgumentError);
}

TEST_CASE("genus 3 product minimal stratum") {
  auto f = cusp_product_g3_minimal_layer();
  CHECK(f.genus() == 3);
  CHECK(f.scale() == 1);
  CHECK(f.weight() == Q(18));
  CHECK(f.coeffs().size() == 109);
  CHECK(f.is_cuspidal_support());

  for (const auto& [k, v] : f.coeffs()) CHECK(key_trace(k, 3) == 12);

  auto first = f.coeffs().begin();
  CHECK(first->first == k3(4, -2, -2, 4, 0, 4));
  CHECK(first->second == Q(-(1L << 28)));

  std::map<long, int> hist;
  for (const auto& [k, v] : f.coeffs()) {
    CHECK(v.get_den() == 1);
    ++hist[v.get_num().get_si()];
  }
  std::map<long, int> expect{
      {-(1L << 28), 16},       {1L << 29, 24},
      {-(1L << 29), 36},       {3L * (1L << 29), 6},
      {-3L * (1L << 30), 4},   {1L << 33, 12},
      {-15L * (1L << 30), 6},  {-5L * (1L << 30), 4},
      {27L * (1L << 30), 1}};
  CHECK(hist == expect);

  CHECK(f.gl_coefficient_invariance());
}

TEST_CASE("eisenstein series and siegel operator") {
  auto g4 = eisenstein_witt(4, 2, 4);
  CHECK(g4.weight() == Q(4));
  auto dropped = siegel_phi(g4);
  auto e1 = theta_expansion(lattice_e8(), 1, 4);
  CHECK(dropped.coeffs() == e1.coeffs());

  auto constant = siegel_phi(e1);
  CHECK(constant.genus() == 0);
  CHECK(constant.get(FKey{}) == 1);

  CHECK(siegel_phi(chi10_at_4()).is_zero());
  CHECK_THROWS_AS(eisenstein_witt(6, 2, 4), ArgumentError);
}
