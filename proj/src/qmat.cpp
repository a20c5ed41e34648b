#include "qmat.hpp"

#include <algorithm>
#include <numeric>

#include "errors.hpp"

namespace sgl {

std::string q_to_string(const Q& q) { return q.get_str(); }

Q q_from_string(const std::string& s) {
  if (s.empty()) throw ArgumentError("empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' ||
          c == '/')) {
      throw ArgumentError("bad rational literal: " + s);
    }
  }
  Q q;
  if (q.set_str(s, 10) != 0) throw ArgumentError("bad rational literal: " + s);
  q.canonicalize();
  if (q.get_den() == 0) throw ArgumentError("zero denominator: " + s);
  return q;
}

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMat QMat::transpose() const {
  QMat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

QMat QMat::operator+(const QMat& o) const {
  QMat r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

QMat QMat::operator-(const QMat& o) const {
  QMat r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

QMat QMat::operator*(const QMat& o) const {
  QMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Q& v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

QMat QMat::operator*(const Q& s) const {
  QMat r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * s;
  return r;
}

QMat QMat::operator-() const {
  QMat r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = -a_[k];
  return r;
}

bool QMat::operator==(const QMat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

QMat QMat::block(int i0, int j0, int r, int c) const {
  QMat b(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) b.at(i, j) = at(i0 + i, j0 + j);
  return b;
}

void QMat::set_block(int i0, int j0, const QMat& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) at(i0 + i, j0 + j) = m.at(i, j);
}

Q QMat::trace() const {
  Q t(0);
  for (int i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

bool QMat::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

bool QMat::is_zero() const {
  for (const Q& v : a_)
    if (v != 0) return false;
  return true;
}

bool QMat::is_integral() const {
  for (const Q& v : a_)
    if (v.get_den() != 1) return false;
  return true;
}

Q QMat::det() const {
  QMat m = *this;
  int n = rows_;
  Q d(1);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m.at(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Q(0);
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    Q inv = 1 / m.at(c, c);
    for (int r = c + 1; r < n; ++r) {
      if (m.at(r, c) == 0) continue;
      Q f = m.at(r, c) * inv;
      for (int j = c; j < n; ++j) m.at(r, j) -= f * m.at(c, j);
    }
  }
  return d;
}

bool QMat::inverse(QMat& out) const {
  int n = rows_;
  QMat m = *this;
  out = identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m.at(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(m.at(piv, j), m.at(c, j));
        std::swap(out.at(piv, j), out.at(c, j));
      }
    Q inv = 1 / m.at(c, c);
    for (int j = 0; j < n; ++j) {
      m.at(c, j) *= inv;
      out.at(c, j) *= inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m.at(r, c) == 0) continue;
      Q f = m.at(r, c);
      for (int j = 0; j < n; ++j) {
        m.at(r, j) -= f * m.at(c, j);
        out.at(r, j) -= f * out.at(c, j);
      }
    }
  }
  return true;
}

ZMat ZMat::identity(int n) {
  ZMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ZMat ZMat::transpose() const {
  ZMat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

ZMat ZMat::operator+(const ZMat& o) const {
  ZMat r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

ZMat ZMat::operator-(const ZMat& o) const {
  ZMat r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

ZMat ZMat::operator*(const ZMat& o) const {
  ZMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Z& v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

ZMat ZMat::operator-() const {
  ZMat r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = -a_[k];
  return r;
}

bool ZMat::operator==(const ZMat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool ZMat::operator<(const ZMat& o) const {
  if (rows_ != o.rows_) return rows_ < o.rows_;
  if (cols_ != o.cols_) return cols_ < o.cols_;
  for (size_t k = 0; k < a_.size(); ++k)
    if (a_[k] != o.a_[k]) return a_[k] < o.a_[k];
  return false;
}

Z ZMat::trace() const {
  Z t(0);
  for (int i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

bool ZMat::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

Z ZMat::det() const {
  Q d = to_q().det();
  return d.get_num();
}

QMat ZMat::to_q() const {
  QMat m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(i, j) = Q(at(i, j));
  return m;
}

std::vector<Z> ZMat::minor_gcds() const {
  int n = std::min(rows_, cols_);
  std::vector<Z> g(n, Z(0));
  // k-subsets of rows and columns; n <= 4 here so brute force is fine.
  std::vector<int> ridx, cidx;
  for (int k = 1; k <= n; ++k) {
    Z acc(0);
    std::vector<int> rs(k), cs(k);
    // iterate subsets via combinations
    auto next_comb = [](std::vector<int>& v, int limit) {
      int k2 = static_cast<int>(v.size());
      for (int i = k2 - 1; i >= 0; --i) {
        if (v[i] < limit - (k2 - i)) {
          ++v[i];
          for (int j = i + 1; j < k2; ++j) v[j] = v[j - 1] + 1;
          return true;
        }
      }
      return false;
    };
    for (int i = 0; i < k; ++i) rs[i] = i;
    do {
      for (int i = 0; i < k; ++i) cs[i] = i;
      do {
        ZMat sub(k, k);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) sub.at(i, j) = at(rs[i], cs[j]);
        Z d = sub.det();
        mpz_gcd(acc.get_mpz_t(), acc.get_mpz_t(), d.get_mpz_t());
      } while (next_comb(cs, cols_));
    } while (next_comb(rs, rows_));
    g[k - 1] = acc;
  }
  return g;
}

std::vector<Z> ZMat::elementary_divisors() const {
  std::vector<Z> g = minor_gcds();
  std::vector<Z> d(g.size());
  Z prev(1);
  for (size_t k = 0; k < g.size(); ++k) {
    if (g[k] == 0) {
      d[k] = 0;
      prev = 0;
    } else {
      d[k] = g[k] / prev;
      prev = g[k];
    }
  }
  return d;
}

ZMat unimodular_with_first_row(const std::vector<Z>& w) {
  int n = static_cast<int>(w.size());
  std::vector<Z> v = w;
  ZMat V = ZMat::identity(n);  // invariant: first row of V equals w after undo
  // Column-reduce v to (g, 0, ..., 0) with elementary ops, mirroring each op
  // by its inverse row op on V, so w == e_1^T * V throughout.
  auto add_col = [&](int src, int dst, const Z& t) {
    v[dst] += t * v[src];
    for (int j = 0; j < n; ++j) V.at(src, j) -= t * V.at(dst, j);
  };
  auto swap_col = [&](int i, int j) {
    std::swap(v[i], v[j]);
    for (int k = 0; k < n; ++k) std::swap(V.at(i, k), V.at(j, k));
  };
  auto neg_col = [&](int i) {
    v[i] = -v[i];
    for (int k = 0; k < n; ++k) V.at(i, k) = -V.at(i, k);
  };
  for (int j = 1; j < n; ++j) {
    while (v[j] != 0) {
      if (v[0] == 0) {
        swap_col(0, j);
        continue;
      }
      Z q;
      mpz_fdiv_q(q.get_mpz_t(), v[j].get_mpz_t(), v[0].get_mpz_t());
      add_col(0, j, -q);
      if (v[j] != 0) swap_col(0, j);
    }
  }
  if (v[0] == -1) neg_col(0);
  if (v[0] != 1) throw ArgumentError("vector is not primitive");
  return V;
}

ZMat hnf_rows(const ZMat& m) {
  ZMat h = m;
  int rows = h.rows(), cols = h.cols();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    // gcd-eliminate column c below row r
    while (true) {
      int piv = -1;
      for (int i = r; i < rows; ++i)
        if (h.at(i, c) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) break;
      if (piv != r)
        for (int j = 0; j < cols; ++j) std::swap(h.at(piv, j), h.at(r, j));
      bool clean = true;
      for (int i = r + 1; i < rows; ++i) {
        if (h.at(i, c) == 0) continue;
        Z q;
        mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(),
                   h.at(r, c).get_mpz_t());
        for (int j = 0; j < cols; ++j) h.at(i, j) -= q * h.at(r, j);
        if (h.at(i, c) != 0) clean = false;
      }
      if (clean) break;
      // smallest remainder may now sit below; loop swaps it up
      int best = r;
      for (int i = r + 1; i < rows; ++i)
        if (h.at(i, c) != 0 &&
            (h.at(best, c) == 0 || abs(h.at(i, c)) < abs(h.at(best, c))))
          best = i;
      if (best != r)
        for (int j = 0; j < cols; ++j) std::swap(h.at(best, j), h.at(r, j));
    }
    if (h.at(r, c) == 0) continue;
    if (h.at(r, c) < 0)
      for (int j = 0; j < cols; ++j) h.at(r, j) = -h.at(r, j);
    for (int i = 0; i < r; ++i) {
      Z q;
      mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(r, c).get_mpz_t());
      if (q != 0)
        for (int j = 0; j < cols; ++j) h.at(i, j) -= q * h.at(r, j);
    }
    ++r;
  }
  return h;
}

QC QC::inv() const {
  Q n = re * re + im * im;
  if (n == 0) throw InconsistencyError("division by zero complex rational");
  return {re / n, -im / n};
}

QCMat QCMat::from_parts(const QMat& re, const QMat& im) {
  QCMat m(re.rows());
  for (int i = 0; i < m.n_; ++i)
    for (int j = 0; j < m.n_; ++j) m.at(i, j) = QC(re.at(i, j), im.at(i, j));
  return m;
}

QCMat QCMat::operator+(const QCMat& o) const {
  QCMat r(n_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

QCMat QCMat::operator*(const QCMat& o) const {
  QCMat r(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const QC& v = at(i, k);
      if (v.is_zero()) continue;
      for (int j = 0; j < n_; ++j)
        r.at(i, j) = r.at(i, j) + v * o.at(k, j);
    }
  return r;
}

QC QCMat::det() const {
  QCMat m = *this;
  int n = n_;
  QC d(Q(1), Q(0));
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (!m.at(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return QC();
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(c, j));
      d = QC(Q(0), Q(0)) - d;
    }
    d = d * m.at(c, c);
    QC inv = m.at(c, c).inv();
    for (int r = c + 1; r < n; ++r) {
      if (m.at(r, c).is_zero()) continue;
      QC f = m.at(r, c) * inv;
      for (int j = c; j < n; ++j) m.at(r, j) = m.at(r, j) - f * m.at(c, j);
    }
  }
  return d;
}

bool QCMat::solve_right(const QCMat& lhs, QCMat& out) const {
  // X * A == L  <=>  A^T X^T == L^T; Gaussian elimination over Q(i).
  int n = n_;
  QCMat at_(n), lt(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      at_.at(i, j) = at(j, i);
      lt.at(i, j) = lhs.at(j, i);
    }
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (!at_.at(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(at_.at(piv, j), at_.at(c, j));
        std::swap(lt.at(piv, j), lt.at(c, j));
      }
    QC inv = at_.at(c, c).inv();
    for (int j = 0; j < n; ++j) {
      at_.at(c, j) = at_.at(c, j) * inv;
      lt.at(c, j) = lt.at(c, j) * inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || at_.at(r, c).is_zero()) continue;
      QC f = at_.at(r, c);
      for (int j = 0; j < n; ++j) {
        at_.at(r, j) = at_.at(r, j) - f * at_.at(c, j);
        lt.at(r, j) = lt.at(r, j) - f * lt.at(c, j);
      }
    }
  }
  out = QCMat(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = lt.at(j, i);
  return true;
}

QMat QCMat::real_part() const {
  QMat m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m.at(i, j) = at(i, j).re;
  return m;
}

QMat QCMat::imag_part() const {
  QMat m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m.at(i, j) = at(i, j).im;
  return m;
}

}  // namespace sgl
