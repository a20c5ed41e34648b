#include "jsonio.hpp"

#include <string>

#include "errors.hpp"

namespace sgl {

namespace {

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end())
    throw ArgumentError(std::string("missing field: ") + name);
  return *it;
}

long field_long(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer())
    throw ArgumentError(std::string("field must be an integer: ") + name);
  return v.get<long>();
}

std::string field_string(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_string())
    throw ArgumentError(std::string("field must be a string: ") + name);
  return v.get<std::string>();
}

// Weights may be integers in the payload (the common case) or exact
// rational strings such as "19/2".
Q field_rational(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (v.is_number_integer()) return Q(v.get<long>());
  if (v.is_string()) return q_from_string(v.get<std::string>());
  throw ArgumentError(std::string("field must be a rational: ") + name);
}

Json rational_value(const Q& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p())
    return Json(q.get_num().get_si());
  return Json(q_to_string(q));
}

}  // namespace

Json matrix_json(const QMat& m) {
  if (m.rows() != m.cols())
    throw ArgumentError("matrix payloads are square");
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(q_to_string(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"g", m.rows()}, {"rows", std::move(rows)}};
}

QMat matrix_from_json(const Json& j) {
  long g = field_long(j, "g");
  const Json& rows = field(j, "rows");
  if (g <= 0 || !rows.is_array() || static_cast<long>(rows.size()) != g)
    throw ArgumentError("matrix payload needs g rows");
  QMat m(static_cast<int>(g), static_cast<int>(g));
  for (long i = 0; i < g; ++i) {
    const Json& row = rows[i];
    if (!row.is_array() || static_cast<long>(row.size()) != g)
      throw ArgumentError("matrix row has the wrong length");
    for (long k = 0; k < g; ++k) {
      if (!row[k].is_string())
        throw ArgumentError("matrix entries are rational strings");
      m.at(static_cast<int>(i), static_cast<int>(k)) =
          q_from_string(row[k].get<std::string>());
    }
  }
  return m;
}

Json matrix_json_z(const ZMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).get_str());
    rows.push_back(std::move(row));
  }
  return Json{{"g", m.rows()}, {"rows", std::move(rows)}};
}

ZMat zmat_from_json(const Json& j) {
  QMat q = matrix_from_json(j);
  if (!q.is_integral()) throw ArgumentError("matrix must be integral");
  ZMat m(q.rows(), q.cols());
  for (int i = 0; i < q.rows(); ++i)
    for (int k = 0; k < q.cols(); ++k) m.at(i, k) = q.at(i, k).get_num();
  return m;
}

Json point_json(const SiegelPoint& p) {
  return Json{{"g", p.g},
              {"x", matrix_json(p.x)},
              {"y", matrix_json(p.y)}};
}

SiegelPoint point_from_json(const Json& j) {
  long g = field_long(j, "g");
  SiegelPoint p(matrix_from_json(field(j, "x")),
                matrix_from_json(field(j, "y")));
  if (p.g != g || p.y.rows() != p.g)
    throw ArgumentError("point blocks must match the genus");
  return p;
}

Json expansion_json(const FourierExpansion& f) {
  Json coeffs = Json::array();
  int len = key_length(f.genus());
  for (const auto& [key, value] : f.coeffs()) {
    Json t = Json::array();
    for (int i = 0; i < len; ++i) t.push_back(key.v[i]);
    coeffs.push_back(Json{{"t", std::move(t)}, {"v", q_to_string(value)}});
  }
  return Json{{"genus", f.genus()},
              {"weight", q_to_string(f.weight())},
              {"scale", f.scale()},
              {"trunc", Json{{"trace", f.trace_bound()}}},
              {"coeffs", std::move(coeffs)}};
}

FourierExpansion expansion_from_json(const Json& j) {
  long genus = field_long(j, "genus");
  Q weight = field_rational(j, "weight");
  long scale = field_long(j, "scale");
  long trace = field_long(field(j, "trunc"), "trace");
  FourierExpansion f(static_cast<int>(genus), weight, static_cast<int>(scale),
                     trace);
  const Json& coeffs = field(j, "coeffs");
  if (!coeffs.is_array()) throw ArgumentError("coeffs must be an array");
  int len = key_length(f.genus());
  for (const Json& entry : coeffs) {
    const Json& t = field(entry, "t");
    if (!t.is_array() || static_cast<int>(t.size()) != len)
      throw ArgumentError("coefficient index has the wrong length");
    FKey key;
    for (int i = 0; i < len; ++i) {
      if (!t[i].is_number_integer())
        throw ArgumentError("coefficient index entries are integers");
      key.v[i] = t[i].get<long>();
    }
    f.set(key, q_from_string(field_string(entry, "v")));
  }
  return f;
}

Json jacobi_json(const JacobiFormExpansion& phi) {
  Json coeffs = Json::array();
  for (const auto& [nr, value] : phi.coeffs) {
    coeffs.push_back(Json{{"n", nr.first},
                          {"r", nr.second},
                          {"v", q_to_string(value)}});
  }
  return Json{{"weight", rational_value(phi.weight)},
              {"index", phi.index},
              {"nbound", phi.nbound},
              {"coeffs", std::move(coeffs)}};
}

JacobiFormExpansion jacobi_from_json(const Json& j) {
  JacobiFormExpansion phi;
  phi.weight = field_rational(j, "weight");
  phi.index = field_long(j, "index");
  phi.nbound = field_long(j, "nbound");
  const Json& coeffs = field(j, "coeffs");
  if (!coeffs.is_array()) throw ArgumentError("coeffs must be an array");
  for (const Json& entry : coeffs) {
    phi.set(field_long(entry, "n"), field_long(entry, "r"),
            q_from_string(field_string(entry, "v")));
  }
  phi.validate();
  return phi;
}

Json hecke_json(const HeckeElement& e) {
  Json cosets = Json::array();
  for (const CosetRep& c : e.cosets) {
    cosets.push_back(Json{{"A", matrix_json_z(c.a)},
                          {"B", matrix_json_z(c.b)},
                          {"D", matrix_json_z(c.d)},
                          {"mult", c.mult}});
  }
  return Json{{"genus", e.genus},
              {"p", e.p},
              {"l", e.l},
              {"label", e.label},
              {"cosets", std::move(cosets)}};
}

HeckeElement hecke_from_json(const Json& j) {
  HeckeElement e;
  e.genus = static_cast<int>(field_long(j, "genus"));
  e.p = field_long(j, "p");
  e.l = field_long(j, "l");
  e.label = field_string(j, "label");
  const Json& cosets = field(j, "cosets");
  if (!cosets.is_array()) throw ArgumentError("cosets must be an array");
  for (const Json& entry : cosets) {
    CosetRep c;
    c.a = zmat_from_json(field(entry, "A"));
    c.b = zmat_from_json(field(entry, "B"));
    c.d = zmat_from_json(field(entry, "D"));
    c.mult = field_long(entry, "mult");
    e.cosets.push_back(std::move(c));
  }
  return e;
}

Json satake_json(const SatakeData& sd) {
  return Json{{"genus", sd.genus},
              {"p", sd.p},
              {"k", sd.k},
              {"lambda1", q_to_string(sd.lambda1)},
              {"sigma", q_to_string(sd.sigma)},
              {"s2e1", q_to_string(sd.s2e1)},
              {"s2e2", q_to_string(sd.s2e2)}};
}

SatakeData satake_from_json(const Json& j) {
  SatakeData sd;
  sd.genus = static_cast<int>(field_long(j, "genus"));
  sd.p = field_long(j, "p");
  sd.k = field_long(j, "k");
  sd.lambda1 = q_from_string(field_string(j, "lambda1"));
  sd.sigma = q_from_string(field_string(j, "sigma"));
  sd.s2e1 = q_from_string(field_string(j, "s2e1"));
  sd.s2e2 = q_from_string(field_string(j, "s2e2"));
  return sd;
}

Json euler_json(const EulerFactor& f) {
  Json coeffs = Json::array();
  for (const Q& c : f.coeffs) coeffs.push_back(q_to_string(c));
  return Json{{"p", f.p}, {"coeffs", std::move(coeffs)}};
}

EulerFactor euler_from_json(const Json& j) {
  EulerFactor f;
  f.p = field_long(j, "p");
  const Json& coeffs = field(j, "coeffs");
  if (!coeffs.is_array()) throw ArgumentError("coeffs must be an array");
  for (const Json& c : coeffs) {
    if (!c.is_string())
      throw ArgumentError("euler coefficients are rational strings");
    f.coeffs.push_back(q_from_string(c.get<std::string>()));
  }
  return f;
}

Json cmat_json(const CMat& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json re_row = Json::array();
    Json im_row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return Json{{"g", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

CMat cmat_from_json(const Json& j) {
  long g = field_long(j, "g");
  const Json& re = field(j, "re");
  const Json& im = field(j, "im");
  if (g <= 0 || !re.is_array() || !im.is_array() ||
      static_cast<long>(re.size()) != g || static_cast<long>(im.size()) != g)
    throw ArgumentError("complex matrix payload needs g rows of re and im");
  CMat m(g, g);
  for (long i = 0; i < g; ++i) {
    const Json& re_row = re[i];
    const Json& im_row = im[i];
    if (!re_row.is_array() || static_cast<long>(re_row.size()) != g ||
        !im_row.is_array() || static_cast<long>(im_row.size()) != g)
      throw ArgumentError("complex matrix row has the wrong length");
    for (long k = 0; k < g; ++k) {
      if (!re_row[k].is_number() || !im_row[k].is_number())
        throw ArgumentError("complex matrix entries are numbers");
      m(i, k) = std::complex<double>(re_row[k].get<double>(),
                                     im_row[k].get<double>());
    }
  }
  return m;
}

Json parse_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ArgumentError("malformed JSON input");
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace sgl
