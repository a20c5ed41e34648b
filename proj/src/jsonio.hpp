#pragma once

#include <json.hpp>

#include "exactmat.hpp"
#include "fourier.hpp"
#include "geometry.hpp"
#include "hecke.hpp"
#include "jacobi.hpp"
#include "lfn.hpp"
#include "qmat.hpp"

namespace sgl {

using Json = nlohmann::json;

// Matrices carry their size as "g" and exact entries as reduced "num/den"
// strings, so a payload re-parses to the identical value.
Json matrix_json(const QMat& m);
QMat matrix_from_json(const Json& j);
Json matrix_json_z(const ZMat& m);
ZMat zmat_from_json(const Json& j);

Json point_json(const SiegelPoint& p);
SiegelPoint point_from_json(const Json& j);

Json expansion_json(const FourierExpansion& f);
FourierExpansion expansion_from_json(const Json& j);

Json jacobi_json(const JacobiFormExpansion& phi);
JacobiFormExpansion jacobi_from_json(const Json& j);

Json hecke_json(const HeckeElement& e);
HeckeElement hecke_from_json(const Json& j);

Json satake_json(const SatakeData& sd);
SatakeData satake_from_json(const Json& j);

Json euler_json(const EulerFactor& f);
EulerFactor euler_from_json(const Json& j);

// Float matrices for the geometry commands: separate real and imaginary
// parts, plain JSON numbers (shortest round-trip form, deterministic).
Json cmat_json(const CMat& m);
CMat cmat_from_json(const Json& j);

// Parse wrapper that turns syntax errors into argument errors.
Json parse_json(const std::string& text);

// Canonical text form used everywhere the CLI prints JSON: two-space
// indent, sorted object keys (the underlying map already sorts), newline
// terminated.
std::string dump_json(const Json& j);

}  // namespace sgl
