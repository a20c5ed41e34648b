#pragma once

#include <cstdint>
#include <optional>

#include "qmat.hpp"

namespace sgl {

// Symmetric rational matrix; constructor rejects asymmetric input.
struct RationalSymMat {
  QMat m;
  RationalSymMat() = default;
  explicit RationalSymMat(const QMat& q);
  int g() const { return m.rows(); }
};

// Integral symmetric matrix with even diagonal: the 2T indexing Fourier
// coefficients of integral-weight forms.
struct EvenGramMat {
  ZMat m;
  EvenGramMat() = default;
  explicit EvenGramMat(const ZMat& z);
  int g() const { return m.rows(); }
};

struct SiegelPoint {
  int g = 0;
  QMat x, y;
  SiegelPoint() = default;
  SiegelPoint(const QMat& X, const QMat& Y);
  bool operator==(const SiegelPoint& o) const { return x == o.x && y == o.y; }
};

struct SimilitudeMatrix {
  int g = 0;
  QMat m;
  Q l;
  SimilitudeMatrix() = default;
  // Validates the similitude identity; throws ArgumentError otherwise.
  explicit SimilitudeMatrix(const QMat& M);

  QMat a() const { return m.block(0, 0, g, g); }
  QMat b() const { return m.block(0, g, g, g); }
  QMat c() const { return m.block(g, 0, g, g); }
  QMat d() const { return m.block(g, g, g, g); }
};

QMat j_mat(int g);

std::optional<Q> similitude_factor(const QMat& M);
SiegelPoint act(const SimilitudeMatrix& M, const SiegelPoint& om);
QMat gl_transform(const QMat& Y, const ZMat& U);
bool is_positive_definite(const QMat& S);
bool is_integral_symplectic(const QMat& M);

// Deterministic generator of integral symplectic matrices: bounded words in
// the inversion, symmetric translations and GL-embeddings.
class SymplecticSampler {
 public:
  SymplecticSampler(int g, std::uint64_t seed) : g_(g), state_(seed) {}
  SimilitudeMatrix next(int word_len = 6);
  std::uint64_t raw();  // underlying 64-bit stream, reused by other samplers

 private:
  int g_;
  std::uint64_t state_;
};

}  // namespace sgl
