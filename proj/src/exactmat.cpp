#include "exactmat.hpp"

#include <cstdlib>

#include "errors.hpp"

namespace sgl {

RationalSymMat::RationalSymMat(const QMat& q) : m(q) {
  if (!m.is_symmetric()) throw ArgumentError("matrix is not symmetric");
}

EvenGramMat::EvenGramMat(const ZMat& z) : m(z) {
  if (!m.is_symmetric()) throw ArgumentError("gram matrix is not symmetric");
  for (int i = 0; i < m.rows(); ++i)
    if (m.at(i, i) % 2 != 0)
      throw ArgumentError("gram matrix has odd diagonal entry");
}

SiegelPoint::SiegelPoint(const QMat& X, const QMat& Y)
    : g(X.rows()), x(X), y(Y) {
  if (!x.is_symmetric() || !y.is_symmetric())
    throw ArgumentError("point parts must be symmetric");
  if (!is_positive_definite(y))
    throw ArgumentError("imaginary part is not positive definite");
}

QMat j_mat(int g) {
  QMat j(2 * g, 2 * g);
  for (int i = 0; i < g; ++i) {
    j.at(i, g + i) = 1;
    j.at(g + i, i) = -1;
  }
  return j;
}

std::optional<Q> similitude_factor(const QMat& M) {
  if (M.rows() != M.cols() || M.rows() % 2 != 0 || M.rows() == 0)
    throw ArgumentError("similitude test needs a square matrix of even size");
  int g = M.rows() / 2;
  QMat j = j_mat(g);
  QMat t = M.transpose() * j * M;
  // t must equal l * J; read l off a prescribed slot and verify globally.
  Q l = t.at(0, g);
  if (l == 0) return std::nullopt;
  if (!(t == j * l)) return std::nullopt;
  return l;
}

SimilitudeMatrix::SimilitudeMatrix(const QMat& M) {
  auto l0 = similitude_factor(M);
  if (!l0) throw ArgumentError("matrix is not a symplectic similitude");
  g = M.rows() / 2;
  m = M;
  l = *l0;
}

SiegelPoint act(const SimilitudeMatrix& M, const SiegelPoint& om) {
  if (M.g != om.g) throw ArgumentError("dimension mismatch in action");
  if (M.l <= 0) throw ArgumentError("action needs positive similitude factor");
  QCMat omega = QCMat::from_parts(om.x, om.y);
  QMat zm(om.g, om.g);
  QCMat a = QCMat::from_parts(M.a(), zm);
  QCMat b = QCMat::from_parts(M.b(), zm);
  QCMat c = QCMat::from_parts(M.c(), zm);
  QCMat d = QCMat::from_parts(M.d(), zm);
  QCMat num = a * omega + b;
  QCMat den = c * omega + d;
  QCMat res;
  if (!den.solve_right(num, res))
    throw InconsistencyError("C*Omega + D is singular under the action");
  return SiegelPoint(res.real_part(), res.imag_part());
}

QMat gl_transform(const QMat& Y, const ZMat& U) {
  Z d = U.det();
  if (d != 1 && d != -1) throw ArgumentError("transform is not unimodular");
  QMat u = U.to_q();
  return u * Y * u.transpose();
}

bool is_positive_definite(const QMat& S) {
  if (!S.is_symmetric()) throw ArgumentError("definiteness test needs symmetry");
  for (int k = 1; k <= S.rows(); ++k)
    if (S.block(0, 0, k, k).det() <= 0) return false;
  return true;
}

bool is_integral_symplectic(const QMat& M) {
  if (M.rows() != M.cols() || M.rows() % 2 != 0) return false;
  if (!M.is_integral()) return false;
  auto l = similitude_factor(M);
  return l && *l == 1;
}

std::uint64_t SymplecticSampler::raw() {
  state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
  return state_ >> 11;
}

SimilitudeMatrix SymplecticSampler::next(int word_len) {
  int g = g_;
  QMat m = QMat::identity(2 * g);
  for (int w = 0; w < word_len; ++w) {
    switch (raw() % 3) {
      case 0:
        m = m * j_mat(g);
        break;
      case 1: {
        QMat t = QMat::identity(2 * g);
        for (int i = 0; i < g; ++i)
          for (int j = i; j < g; ++j) {
            Q v(static_cast<long>(raw() % 5) - 2);
            t.at(i, g + j) = v;
            t.at(j, g + i) = v;
          }
        m = m * t;
        break;
      }
      default: {
        // diag(U, U^{-T}) for a random elementary unimodular U
        ZMat u = ZMat::identity(g);
        if (g > 1) {
          int i = static_cast<int>(raw() % g);
          int j = static_cast<int>(raw() % g);
          if (i == j) j = (j + 1) % g;
          u.at(i, j) = static_cast<long>(raw() % 5) - 2;
        } else {
          u.at(0, 0) = (raw() % 2) ? 1 : -1;
        }
        QMat ui;
        if (!u.to_q().inverse(ui)) throw InconsistencyError("bad unimodular");
        QMat e(2 * g, 2 * g);
        e.set_block(0, 0, u.to_q());
        e.set_block(g, g, ui.transpose());
        m = m * e;
        break;
      }
    }
  }
  return SimilitudeMatrix(m);
}

}  // namespace sgl
