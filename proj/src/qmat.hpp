#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace sgl {

using Z = mpz_class;
using Q = mpq_class;

std::string q_to_string(const Q& q);
Q q_from_string(const std::string& s);

// Dense exact-rational matrix. Small dimensions (<= 8) throughout, so plain
// Gaussian elimination is the right tool.
class QMat {
 public:
  QMat() : rows_(0), cols_(0) {}
  QMat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, Q(0)) {}

  static QMat identity(int n);
  static QMat zero(int n) { return QMat(n, n); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Q& at(int i, int j) { return a_[i * cols_ + j]; }
  const Q& at(int i, int j) const { return a_[i * cols_ + j]; }

  QMat transpose() const;
  QMat operator+(const QMat& o) const;
  QMat operator-(const QMat& o) const;
  QMat operator*(const QMat& o) const;
  QMat operator*(const Q& s) const;
  QMat operator-() const;
  bool operator==(const QMat& o) const;

  QMat block(int i0, int j0, int r, int c) const;
  void set_block(int i0, int j0, const QMat& m);

  Q trace() const;
  bool is_symmetric() const;
  bool is_zero() const;
  bool is_integral() const;

  Q det() const;
  // Inverse via Gauss-Jordan; returns false when singular.
  bool inverse(QMat& out) const;

 private:
  int rows_, cols_;
  std::vector<Q> a_;
};

// Integer matrix for unimodular transforms, Hecke coset blocks and Gram keys.
class ZMat {
 public:
  ZMat() : rows_(0), cols_(0) {}
  ZMat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, Z(0)) {}

  static ZMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Z& at(int i, int j) { return a_[i * cols_ + j]; }
  const Z& at(int i, int j) const { return a_[i * cols_ + j]; }

  ZMat transpose() const;
  ZMat operator+(const ZMat& o) const;
  ZMat operator-(const ZMat& o) const;
  ZMat operator*(const ZMat& o) const;
  ZMat operator-() const;
  bool operator==(const ZMat& o) const;
  bool operator<(const ZMat& o) const;  // lexicographic, for canonical ordering

  Z trace() const;
  bool is_symmetric() const;

  Z det() const;
  QMat to_q() const;

  // gcd of all k x k minors, k = 1..n; zero matrix gives all zeros.
  std::vector<Z> minor_gcds() const;
  // Elementary divisors d_1 | d_2 | ... from the minor gcds.
  std::vector<Z> elementary_divisors() const;

 private:
  int rows_, cols_;
  std::vector<Z> a_;
};

// Unimodular matrix whose first row is the given primitive vector
// (gcd of entries must be 1).
ZMat unimodular_with_first_row(const std::vector<Z>& w);

// Row Hermite normal form (left-unimodular canonical form).
ZMat hnf_rows(const ZMat& m);

// Complex rationals, used only to evaluate the group action exactly.
struct QC {
  Q re, im;
  QC() : re(0), im(0) {}
  QC(const Q& r, const Q& i) : re(r), im(i) {}
  QC operator+(const QC& o) const { return {re + o.re, im + o.im}; }
  QC operator-(const QC& o) const { return {re - o.re, im - o.im}; }
  QC operator*(const QC& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  bool is_zero() const { return re == 0 && im == 0; }
  QC inv() const;
};

class QCMat {
 public:
  QCMat() : n_(0) {}
  explicit QCMat(int n) : n_(n), a_(n * n) {}
  static QCMat from_parts(const QMat& re, const QMat& im);

  int n() const { return n_; }
  QC& at(int i, int j) { return a_[i * n_ + j]; }
  const QC& at(int i, int j) const { return a_[i * n_ + j]; }

  QCMat operator+(const QCMat& o) const;
  QCMat operator*(const QCMat& o) const;
  QC det() const;
  // Solves X * this == lhs; false when this is singular.
  bool solve_right(const QCMat& lhs, QCMat& out) const;

  QMat real_part() const;
  QMat imag_part() const;

 private:
  int n_;
  std::vector<QC> a_;
};

}  // namespace sgl
