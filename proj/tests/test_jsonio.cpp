#include "jsonio.hpp"

#include <doctest.h>

#include "errors.hpp"
#include "hecke.hpp"
#include "jacobi.hpp"
#include "lfn.hpp"
#include "theta.hpp"

using namespace sgl;

namespace {

QMat qm2(const Q& a, const Q& b, const Q& c, const Q& d) {
  QMat m(2, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

}  // namespace

TEST_CASE("exact matrices and points survive the round trip") {
  QMat m = qm2(Q(1, 2), Q(-3, 7), Q(-3, 7), Q(5));
  Json j = matrix_json(m);
  CHECK(j["g"] == 2);
  CHECK(j["rows"][0][0] == "1/2");
  CHECK(j["rows"][1][0] == "-3/7");
  QMat back = matrix_from_json(j);
  CHECK(back.rows() == 2);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) CHECK(back.at(i, k) == m.at(i, k));

  QMat px = QMat::identity(1);
  QMat py = QMat::identity(1);
  px.at(0, 0) = Q(3, 10);
  py.at(0, 0) = Q(2, 5);
  SiegelPoint p(px, py);
  SiegelPoint q = point_from_json(point_json(p));
  CHECK(q == p);

  Json bad = j;
  bad["rows"][0].erase(1);
  CHECK_THROWS_AS(matrix_from_json(bad), ArgumentError);
  Json garbled = j;
  garbled["rows"][0][0] = "1/2x";
  CHECK_THROWS_AS(matrix_from_json(garbled), ArgumentError);

  Json flat = point_json(p);
  flat["y"]["rows"][0][0] = "-1";
  CHECK_THROWS_AS(point_from_json(flat), ArgumentError);

  ZMat z = zmat_from_json(matrix_json_z(key_to_mat(FKey{{2, 1, 4}}, 2)));
  CHECK(z.at(0, 1) == 1);
  CHECK_THROWS_AS(zmat_from_json(matrix_json(m)), ArgumentError);
}

TEST_CASE("fourier expansions serialize bit-exactly in sorted key order") {
  FourierExpansion f = chi10(6);
  Json j = expansion_json(f);
  CHECK(j["genus"] == 2);
  CHECK(j["weight"] == "10");
  CHECK(j["scale"] == 1);
  CHECK(j["trunc"]["trace"] == 6);
  FourierExpansion back = expansion_from_json(j);
  CHECK(back.genus() == f.genus());
  CHECK(back.weight() == f.weight());
  CHECK(back.scale() == f.scale());
  CHECK(back.trace_bound() == f.trace_bound());
  CHECK(back.coeffs() == f.coeffs());

  const Json& coeffs = j["coeffs"];
  for (size_t i = 1; i < coeffs.size(); ++i) {
    std::array<long, 3> prev{coeffs[i - 1]["t"][0], coeffs[i - 1]["t"][1],
                             coeffs[i - 1]["t"][2]};
    std::array<long, 3> cur{coeffs[i]["t"][0], coeffs[i]["t"][1],
                            coeffs[i]["t"][2]};
    CHECK(prev < cur);
  }

  std::string once = dump_json(j);
  CHECK(once == dump_json(expansion_json(f)));
  CHECK(once == dump_json(expansion_json(expansion_from_json(parse_json(once)))));

  Json odd = j;
  odd["coeffs"][0]["t"] = {1, 0, 2};
  CHECK_THROWS_AS(expansion_from_json(odd), ArgumentError);
  Json beyond = j;
  beyond["coeffs"][0]["t"] = {2, 1};
  CHECK_THROWS_AS(expansion_from_json(beyond), ArgumentError);
  CHECK_THROWS_AS(parse_json("{\"genus\": 2,"), ArgumentError);
}

TEST_CASE("jacobi payloads keep the row bound and validate on parse") {
  JacobiFormExpansion phi;
  phi.weight = Q(10);
  phi.index = 1;
  phi.nbound = 2;
  phi.set(1, 0, Q(1, 2));
  phi.set(1, 1, Q(-1, 4));
  phi.set(1, -1, Q(-1, 4));
  phi.set(2, 0, Q(-9));
  phi.set(2, 1, Q(4));
  phi.set(2, -1, Q(4));
  phi.set(2, 2, Q(1, 2));
  phi.set(2, -2, Q(1, 2));

  Json j = jacobi_json(phi);
  CHECK(j["weight"] == 10);
  CHECK(j["index"] == 1);
  CHECK(j["nbound"] == 2);
  JacobiFormExpansion back = jacobi_from_json(j);
  CHECK(back.weight == phi.weight);
  CHECK(back.index == phi.index);
  CHECK(back.nbound == phi.nbound);
  CHECK(back.coeffs == phi.coeffs);

  Json split = j;
  split["coeffs"][1]["v"] = "7";
  CHECK_THROWS_AS(jacobi_from_json(split), InconsistencyError);

  JacobiFormExpansion half;
  half.weight = Q(19, 2);
  half.nbound = 0;
  CHECK(jacobi_json(half)["weight"] == "19/2");
  CHECK(jacobi_from_json(jacobi_json(half)).weight == Q(19, 2));
}

TEST_CASE("hecke cosets, satake parameters, and euler factors round trip") {
  HeckeElement e = coset_reps("T", 2, 1);
  HeckeElement back = hecke_from_json(hecke_json(e));
  CHECK(back.genus == e.genus);
  CHECK(back.p == e.p);
  CHECK(back.l == e.l);
  CHECK(back.label == e.label);
  REQUIRE(back.cosets.size() == e.cosets.size());
  for (size_t i = 0; i < e.cosets.size(); ++i) {
    CHECK(back.cosets[i].mult == e.cosets[i].mult);
    for (int r = 0; r < e.genus; ++r)
      for (int c = 0; c < e.genus; ++c) {
        CHECK(back.cosets[i].a.at(r, c) == e.cosets[i].a.at(r, c));
        CHECK(back.cosets[i].b.at(r, c) == e.cosets[i].b.at(r, c));
        CHECK(back.cosets[i].d.at(r, c) == e.cosets[i].d.at(r, c));
      }
  }

  SatakeData sd = satake_solve_g1(12, 2, Q(-24));
  SatakeData sback = satake_from_json(satake_json(sd));
  CHECK(sback.genus == sd.genus);
  CHECK(sback.lambda1 == sd.lambda1);
  CHECK(sback.s2e1 == sd.s2e1);

  EulerFactor f = spinor_factor(sd);
  EulerFactor fback = euler_from_json(euler_json(f));
  CHECK(fback.p == f.p);
  CHECK(fback.coeffs == f.coeffs);
  CHECK(euler_json(f)["coeffs"][0] == "1");
}

TEST_CASE("complex matrices round trip without loss") {
  CMat m(2, 2);
  m << std::complex<double>(0.1, -1.0 / 3.0),
      std::complex<double>(2.0, 0.0), std::complex<double>(0.0, -2.5e-17),
      std::complex<double>(1e300, 7.0);
  CMat back = cmat_from_json(cmat_json(m));
  REQUIRE(back.rows() == 2);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      CHECK(back(i, k).real() == m(i, k).real());
      CHECK(back(i, k).imag() == m(i, k).imag());
    }
  Json j = cmat_json(m);
  j["im"].erase(1);
  CHECK_THROWS_AS(cmat_from_json(j), ArgumentError);
}
