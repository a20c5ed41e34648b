#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace sgl {

namespace {

using cd = std::complex<double>;

void require_symmetric(const CMat& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw ArgumentError(std::string(who) + ": square matrix expected");
  }
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tolerances().symmetry) {
    throw ArgumentError(std::string(who) + ": symmetric matrix expected");
  }
}

double min_hermitian_eigenvalue(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (h + h.adjoint()));
  return es.eigenvalues().minCoeff();
}

void require_upper_half(const CMat& omega, const char* who) {
  require_symmetric(omega, who);
  Eigen::SelfAdjointEigenSolver<RMat> es(omega.imag());
  if (es.eigenvalues().minCoeff() <= tolerances().min_eigenvalue) {
    throw ArgumentError(std::string(who) +
                        ": imaginary part must be positive definite");
  }
}

RMat j_block(int g) {
  RMat j = RMat::Zero(2 * g, 2 * g);
  j.topRightCorner(g, g) = RMat::Identity(g, g);
  j.bottomLeftCorner(g, g) = -RMat::Identity(g, g);
  return j;
}

void require_symplectic(const RMat& m, int g, const char* who) {
  if (m.rows() != 2 * g || m.cols() != 2 * g) {
    throw ArgumentError(std::string(who) + ": block matrix size mismatch");
  }
  RMat j = j_block(g);
  if ((m.transpose() * j * m - j).cwiseAbs().maxCoeff() >
      tolerances().invariance_rel) {
    throw ArgumentError(std::string(who) + ": symplectic matrix expected");
  }
}

CMat inverted(const CMat& m, const char* who) {
  Eigen::FullPivLU<CMat> lu(m);
  if (!lu.isInvertible()) {
    throw ArgumentError(std::string(who) +
                        ": linear factor is numerically singular");
  }
  return lu.inverse();
}

cd char_at(const RMat& x, const Eigen::LDLT<RMat>& y_fact,
           const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b,
           const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  double t1 = (a * u)(0);
  Eigen::RowVectorXd bax = b - a * x;
  double t2 = (bax * y_fact.solve(v))(0);
  double phase = 2.0 * std::numbers::pi * (t1 + t2);
  return {std::cos(phase), std::sin(phase)};
}

Eigen::RowVectorXd index_row(const std::vector<long>& idx) {
  Eigen::RowVectorXd row(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) row(i) = double(idx[i]);
  return row;
}

}  // namespace

const NumericTolerances& tolerances() {
  static const NumericTolerances t;
  return t;
}

bool in_siegel_space(const CMat& omega) {
  if (omega.rows() != omega.cols()) return false;
  if ((omega - omega.transpose()).cwiseAbs().maxCoeff() >
      tolerances().symmetry) {
    return false;
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(omega.imag());
  return es.eigenvalues().minCoeff() > tolerances().min_eigenvalue;
}

bool in_disk_domain(const CMat& w) {
  if (w.rows() != w.cols()) return false;
  if ((w - w.transpose()).cwiseAbs().maxCoeff() > tolerances().symmetry) {
    return false;
  }
  CMat h = CMat::Identity(w.rows(), w.cols()) - w * w.conjugate();
  return min_hermitian_eigenvalue(h) > tolerances().min_eigenvalue;
}

std::complex<double> metric_eval(const TangentVector& v,
                                 const TangentVector& w) {
  require_upper_half(v.base, "metric");
  require_symmetric(v.dir, "metric direction");
  require_symmetric(w.dir, "metric direction");
  if (w.base.rows() != v.base.rows() ||
      (v.base - w.base).cwiseAbs().maxCoeff() > tolerances().symmetry) {
    throw ArgumentError("metric: shared base point expected");
  }
  CMat yinv = v.base.imag().inverse().cast<cd>();
  return (yinv * v.dir * yinv * w.dir.conjugate()).trace();
}

CMat siegel_act(const RMat& m, const CMat& omega) {
  require_upper_half(omega, "point action");
  int g = int(omega.rows());
  require_symplectic(m, g, "point action");
  CMat a = m.topLeftCorner(g, g).cast<cd>();
  CMat b = m.topRightCorner(g, g).cast<cd>();
  CMat c = m.bottomLeftCorner(g, g).cast<cd>();
  CMat d = m.bottomRightCorner(g, g).cast<cd>();
  return (a * omega + b) * inverted(c * omega + d, "point action");
}

TangentVector pushforward(const RMat& m, const TangentVector& v) {
  require_symmetric(v.dir, "pushforward");
  TangentVector out;
  out.base = siegel_act(m, v.base);
  int g = int(v.base.rows());
  CMat c = m.bottomLeftCorner(g, g).cast<cd>();
  CMat d = m.bottomRightCorner(g, g).cast<cd>();
  CMat deninv = inverted(c * v.base + d, "pushforward");
  out.dir = deninv.transpose() * v.dir * deninv;
  return out;
}

double volume_density(const CMat& omega) {
  require_upper_half(omega, "volume density");
  int g = int(omega.rows());
  return std::pow(omega.imag().determinant(), -(g + 1));
}

CMat cayley(const CMat& w) {
  require_symmetric(w, "cayley");
  int g = int(w.rows());
  CMat id = CMat::Identity(g, g);
  if (min_hermitian_eigenvalue(id - w * w.conjugate()) <=
      tolerances().min_eigenvalue) {
    throw ArgumentError("cayley: point outside the bounded domain");
  }
  return cd(0, 1) * (id + w) * inverted(id - w, "cayley");
}

CMat cayley_inv(const CMat& omega) {
  require_upper_half(omega, "cayley inverse");
  int g = int(omega.rows());
  CMat id = CMat::Identity(g, g);
  return (omega - cd(0, 1) * id) *
         inverted(omega + cd(0, 1) * id, "cayley inverse");
}

CMat disk_act(const RMat& m, const CMat& w) {
  require_symmetric(w, "disk action");
  int g = int(w.rows());
  require_symplectic(m, g, "disk action");
  CMat a = m.topLeftCorner(g, g).cast<cd>();
  CMat b = m.topRightCorner(g, g).cast<cd>();
  CMat c = m.bottomLeftCorner(g, g).cast<cd>();
  CMat d = m.bottomRightCorner(g, g).cast<cd>();
  CMat p = 0.5 * ((a + d) + cd(0, 1) * (b - c));
  CMat q = 0.5 * ((a - d) - cd(0, 1) * (b + c));
  return (p * w + q) *
         inverted(q.conjugate() * w + p.conjugate(), "disk action");
}

CMat cross_ratio(const CMat& om1, const CMat& om0) {
  require_upper_half(om1, "cross ratio");
  require_upper_half(om0, "cross ratio");
  if (om1.rows() != om0.rows()) {
    throw ArgumentError("cross ratio: size mismatch");
  }
  return (om1 - om0) * inverted(om1 - om0.conjugate(), "cross ratio") *
         (om1.conjugate() - om0.conjugate()) *
         inverted(om1.conjugate() - om0, "cross ratio");
}

std::vector<double> cross_ratio_eigenvalues(const CMat& om1, const CMat& om0) {
  CMat r = cross_ratio(om1, om0);
  Eigen::ComplexEigenSolver<CMat> es(r);
  std::vector<double> vals;
  for (int i = 0; i < r.rows(); ++i) {
    cd lambda = es.eigenvalues()(i);
    if (std::abs(lambda.imag()) > tolerances().invariance_rel) {
      throw ArgumentError("cross ratio: spectrum is not numerically real");
    }
    double re = lambda.real();
    if (re >= 1.0 || re < -tolerances().invariance_rel) {
      throw ArgumentError("cross ratio: eigenvalue outside the unit interval");
    }
    vals.push_back(std::max(re, 0.0));
  }
  std::sort(vals.begin(), vals.end());
  return vals;
}

double geodesic_distance(const CMat& om0, const CMat& om1) {
  double total = 0.0;
  for (double r : cross_ratio_eigenvalues(om1, om0)) {
    double s = std::sqrt(r);
    double term = std::log((1.0 + s) / (1.0 - s));
    total += term * term;
  }
  return std::sqrt(total);
}

double invariant_poly(int j, const CMat& z) {
  require_symmetric(z, "invariant polynomial");
  int g = int(z.rows());
  if (j < 1 || j > g) {
    throw ArgumentError(
        "invariant polynomial: order must lie between 1 and the genus");
  }
  CMat base = z * z.conjugate();
  CMat acc = base;
  for (int i = 1; i < j; ++i) acc = acc * base;
  return acc.trace().real();
}

bool riemann_conditions(const CMat& omega) {
  if (omega.rows() != omega.cols()) {
    throw ArgumentError("period relations: square matrix expected");
  }
  int g = int(omega.rows());
  CMat star(g, 2 * g);
  star.leftCols(g) = CMat::Identity(g, g);
  star.rightCols(g) = omega;
  CMat j = j_block(g).cast<cd>();
  CMat first = star * j * star.transpose();
  if (first.cwiseAbs().maxCoeff() > tolerances().riemann) return false;
  CMat second = cd(0, 1) * (star * j * star.adjoint());
  return min_hermitian_eigenvalue(second) > tolerances().riemann;
}

std::complex<double> torus_char(const CMat& omega, const TorusCharIndex& idx,
                                const CVec& z) {
  require_upper_half(omega, "torus character");
  size_t g = size_t(omega.rows());
  if (idx.a.size() != g || idx.b.size() != g || size_t(z.size()) != g) {
    throw ArgumentError("torus character: index and point sizes must match");
  }
  Eigen::LDLT<RMat> y_fact(omega.imag());
  return char_at(omega.real(), y_fact, index_row(idx.a), index_row(idx.b),
                 z.real(), z.imag());
}

std::complex<double> torus_inner_product(const CMat& omega,
                                         const TorusCharIndex& i1,
                                         const TorusCharIndex& i2, int grid_n,
                                         bool allow_large, bool parallel) {
  require_upper_half(omega, "torus pairing");
  size_t g = size_t(omega.rows());
  if (i1.a.size() != g || i1.b.size() != g || i2.a.size() != g ||
      i2.b.size() != g) {
    throw ArgumentError("torus pairing: index sizes must match the genus");
  }
  if (grid_n < 4) throw ArgumentError("torus pairing: grid too coarse");
  if (g > 2) throw ArgumentError("torus pairing covers genus 1 and 2 only");
  if (g == 2 && !allow_large) {
    throw ArgumentError(
        "torus pairing: the genus 2 grid has quartic cost, enable it "
        "explicitly");
  }

  RMat x = omega.real();
  Eigen::LDLT<RMat> y_fact(omega.imag());
  Eigen::RowVectorXd a1 = index_row(i1.a), b1 = index_row(i1.b);
  Eigen::RowVectorXd a2 = index_row(i2.a), b2 = index_row(i2.b);

  long total = 1;
  for (size_t i = 0; i < 2 * g; ++i) total *= grid_n;
  const long chunk = 4096;
  long nchunks = (total + chunk - 1) / chunk;
  std::vector<cd> partial(nchunks, cd(0, 0));

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long c = 0; c < nchunks; ++c) {
    cd local(0, 0);
    Eigen::VectorXd s(g), t(g);
    long hi = std::min(total, (c + 1) * chunk);
    for (long lin = c * chunk; lin < hi; ++lin) {
      long rest = lin;
      for (size_t i = 0; i < g; ++i) {
        s(i) = double(rest % grid_n) / grid_n;
        rest /= grid_n;
      }
      for (size_t i = 0; i < g; ++i) {
        t(i) = double(rest % grid_n) / grid_n;
        rest /= grid_n;
      }
      Eigen::RowVectorXcd zrow =
          s.transpose().cast<cd>() + t.transpose().cast<cd>() * omega;
      Eigen::VectorXd u = zrow.real().transpose();
      Eigen::VectorXd v = zrow.imag().transpose();
      local += char_at(x, y_fact, a1, b1, u, v) *
               std::conj(char_at(x, y_fact, a2, b2, u, v));
    }
    partial[c] = local;
  }

  // Fixed-shape pairwise reduction keeps the summation order independent of
  // the thread count.
  while (partial.size() > 1) {
    std::vector<cd> next((partial.size() + 1) / 2, cd(0, 0));
    for (size_t i = 0; i < next.size(); ++i) {
      next[i] = partial[2 * i];
      if (2 * i + 1 < partial.size()) next[i] += partial[2 * i + 1];
    }
    partial.swap(next);
  }
  return partial[0] / double(total);
}

RMat NumericSampler::sample(int genus) {
  std::uniform_real_distribution<double> ent(-0.8, 0.8);
  std::uniform_int_distribution<int> pick(0, 2);
  int g = genus;
  RMat m = RMat::Identity(2 * g, 2 * g);
  for (int round = 0; round < 5; ++round) {
    RMat f = RMat::Identity(2 * g, 2 * g);
    int kind = pick(rng);
    if (kind == 0) {
      for (int i = 0; i < g; ++i) {
        for (int j = i; j < g; ++j) {
          double v = ent(rng);
          f(i, g + j) = v;
          f(j, g + i) = v;
        }
      }
    } else if (kind == 1) {
      RMat a;
      do {
        a = RMat::Identity(g, g);
        for (int i = 0; i < g; ++i) {
          for (int j = 0; j < g; ++j) a(i, j) += 0.35 * ent(rng);
        }
      } while (std::abs(a.determinant()) < 0.2);
      f.topLeftCorner(g, g) = a;
      f.bottomRightCorner(g, g) = a.inverse().transpose();
    } else {
      f = j_block(g);
    }
    m = m * f;
  }
  return m;
}

CMat NumericSampler::sample_point(int genus) {
  std::uniform_real_distribution<double> ent(-1.0, 1.0);
  std::uniform_real_distribution<double> diag(0.7, 1.6);
  int g = genus;
  RMat x(g, g), l = RMat::Zero(g, g);
  for (int i = 0; i < g; ++i) {
    for (int j = i; j < g; ++j) {
      x(i, j) = ent(rng);
      x(j, i) = x(i, j);
    }
    l(i, i) = diag(rng);
    for (int j = 0; j < i; ++j) l(i, j) = 0.5 * ent(rng);
  }
  RMat y = l * l.transpose();
  return x.cast<cd>() + cd(0, 1) * y.cast<cd>();
}

CMat NumericSampler::sample_tangent(int genus) {
  std::uniform_real_distribution<double> ent(-1.0, 1.0);
  int g = genus;
  CMat dir(g, g);
  for (int i = 0; i < g; ++i) {
    for (int j = i; j < g; ++j) {
      dir(i, j) = cd(ent(rng), ent(rng));
      dir(j, i) = dir(i, j);
    }
  }
  return dir;
}

CMat NumericSampler::sample_disk(int genus) {
  std::uniform_real_distribution<double> ent(-1.0, 1.0);
  std::uniform_real_distribution<double> radius(0.1, 0.8);
  int g = genus;
  CMat w(g, g);
  for (int i = 0; i < g; ++i) {
    for (int j = i; j < g; ++j) {
      w(i, j) = cd(ent(rng), ent(rng));
      w(j, i) = w(i, j);
    }
  }
  Eigen::JacobiSVD<CMat> svd(w);
  double top = svd.singularValues()(0);
  if (top > 0) w *= radius(rng) / top;
  return w;
}

}  // namespace sgl
