#include "lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "errors.hpp"
#include "parallel.hpp"

namespace sgl {

namespace {

EvenLattice lattice_from_basis(const std::string& name, const QMat& basis) {
  const int n = basis.rows();
  QMat gram_q = basis * basis.transpose();
  if (!gram_q.is_integral()) {
    throw InconsistencyError("lattice basis does not span an integral lattice");
  }
  ZMat gram(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      gram.at(i, j) = gram_q.at(i, j).get_num();
    }
  }
  for (int i = 0; i < n; ++i) {
    if (gram.at(i, i) % 2 != 0) {
      throw InconsistencyError("lattice is not even");
    }
  }
  Z det = gram.det();
  EvenLattice l;
  l.name = name;
  l.rank = n;
  l.gram = gram;
  l.unimodular = (det == 1);
  if (!l.unimodular) {
    throw InconsistencyError("lattice " + name + " is not unimodular");
  }
  return l;
}

QMat e8_basis() {
  QMat b = QMat(8, 8);
  for (int j = 0; j < 8; ++j) b.at(0, j) = Q(1, 2);
  for (int i = 0; i < 6; ++i) {
    b.at(1 + i, i) = 1;
    b.at(1 + i, i + 1) = -1;
  }
  b.at(7, 5) = 1;
  b.at(7, 6) = 1;
  return b;
}

QMat d16plus_basis() {
  QMat b = QMat(16, 16);
  for (int j = 0; j < 16; ++j) b.at(0, j) = Q(1, 2);
  for (int i = 0; i < 14; ++i) {
    b.at(1 + i, i) = 1;
    b.at(1 + i, i + 1) = -1;
  }
  b.at(15, 13) = 1;
  b.at(15, 14) = 1;
  return b;
}

std::vector<std::vector<long>> gram_to_long(const ZMat& g) {
  const int n = g.rows();
  std::vector<std::vector<long>> out(n, std::vector<long>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!g.at(i, j).fits_slong_p()) {
        throw ArgumentError("gram entry out of range");
      }
      out[i][j] = g.at(i, j).get_si();
    }
  }
  return out;
}

long inner_product(const std::vector<std::vector<long>>& gram,
                   const std::vector<long>& v, const std::vector<long>& w) {
  const int n = static_cast<int>(gram.size());
  __int128 acc = 0;
  for (int i = 0; i < n; ++i) {
    __int128 row = 0;
    for (int j = 0; j < n; ++j) row += static_cast<__int128>(gram[i][j]) * w[j];
    acc += static_cast<__int128>(v[i]) * row;
  }
  return static_cast<long>(acc);
}

// Floating point LDL factors drive the branch pruning; every leaf is then
// checked with exact integer arithmetic, so the slack only costs time.
struct LdlData {
  std::vector<double> d;
  std::vector<std::vector<double>> l;
};

LdlData ldl_decompose(const ZMat& gram) {
  const int n = gram.rows();
  LdlData out{std::vector<double>(n),
              std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0))};
  for (int i = 0; i < n; ++i) {
    double di = gram.at(i, i).get_d();
    for (int k = 0; k < i; ++k) di -= out.l[i][k] * out.l[i][k] * out.d[k];
    if (di <= 0) throw InconsistencyError("gram matrix is not positive definite");
    out.d[i] = di;
    out.l[i][i] = 1.0;
    for (int j = i + 1; j < n; ++j) {
      double v = gram.at(j, i).get_d();
      for (int k = 0; k < i; ++k) v -= out.l[j][k] * out.l[i][k] * out.d[k];
      out.l[j][i] = v / di;
    }
  }
  return out;
}

// The exact norm of the chosen suffix rides along so leaves need no extra
// quadratic form evaluation.
template <typename Sink>
void enumerate_level(const LdlData& f,
                     const std::vector<std::vector<long>>& gram, long max_norm,
                     int level, double budget, long exact,
                     std::vector<long>& x, Sink&& sink) {
  if (level < 0) {
    if (exact <= max_norm) sink(x, exact);
    return;
  }
  const int n = static_cast<int>(f.d.size());
  double c = 0;
  long cross = 0;
  for (int j = level + 1; j < n; ++j) {
    c += f.l[j][level] * x[j];
    cross += gram[level][j] * x[j];
  }
  double r = std::sqrt(std::max(0.0, budget / f.d[level]));
  long lo = static_cast<long>(std::floor(-c - r)) - 1;
  long hi = static_cast<long>(std::ceil(-c + r)) + 1;
  for (long v = lo; v <= hi; ++v) {
    double y = v + c;
    double used = f.d[level] * y * y;
    if (used > budget) continue;
    x[level] = v;
    long gain = gram[level][level] * v * v + 2 * v * cross;
    enumerate_level(f, gram, max_norm, level - 1, budget - used, exact + gain,
                    x, sink);
  }
  x[level] = 0;
}

}  // namespace

const EvenLattice& lattice_e8() {
  static const EvenLattice l = lattice_from_basis("E8", e8_basis());
  return l;
}

const EvenLattice& lattice_d16plus() {
  static const EvenLattice l = lattice_from_basis("D16+", d16plus_basis());
  return l;
}

const EvenLattice& lattice_e8e8() {
  static const EvenLattice l = [] {
    QMat b = QMat(16, 16);
    QMat e8 = e8_basis();
    b.set_block(0, 0, e8);
    b.set_block(8, 8, e8);
    return lattice_from_basis("E8+E8", b);
  }();
  return l;
}

std::vector<std::vector<long>> short_vectors(const EvenLattice& l,
                                             long max_norm, bool parallel) {
  if (max_norm < 0) throw ArgumentError("short_vectors: negative norm bound");
  const int n = l.rank;
  LdlData f = ldl_decompose(l.gram);
  auto gram = gram_to_long(l.gram);
  double budget = static_cast<double>(max_norm) + 1e-6;

  const int top = n - 1;
  double r = std::sqrt(budget / f.d[top]);
  long lo = -static_cast<long>(std::floor(r)) - 1;
  long hi = static_cast<long>(std::floor(r)) + 1;

  std::vector<std::vector<std::vector<long>>> slices(hi - lo + 1);
  int workers = parallel ? worker_count() : 1;
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (long v = lo; v <= hi; ++v) {
    double used = f.d[top] * static_cast<double>(v) * v;
    if (used > budget) continue;
    std::vector<long> x(n, 0);
    x[top] = v;
    long gain = gram[top][top] * v * v;
    auto& slice = slices[v - lo];
    enumerate_level(f, gram, max_norm, top - 1, budget - used, gain, x,
                    [&](const std::vector<long>& vec, long) {
                      slice.push_back(vec);
                    });
  }

  std::vector<std::vector<long>> out;
  for (auto& s : slices) {
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

std::vector<long> norm_histogram(const EvenLattice& l, long max_norm) {
  if (max_norm < 0) throw ArgumentError("norm_histogram: negative norm bound");
  const int n = l.rank;
  LdlData f = ldl_decompose(l.gram);
  auto gram = gram_to_long(l.gram);
  double budget = static_cast<double>(max_norm) + 1e-6;

  std::vector<long> hist(max_norm + 1, 0);
  std::vector<long> x(n, 0);
  enumerate_level(f, gram, max_norm, n - 1, budget, 0, x,
                  [&](const std::vector<long>&, long q) { ++hist[q]; });
  return hist;
}

long rep_number(const EvenLattice& s, const ZMat& t, bool allow_n3,
                bool parallel) {
  const int n = t.rows();
  if (!t.is_symmetric()) throw ArgumentError("rep_number: index must be symmetric");
  if (n < 1 || n > 3) throw ArgumentError("rep_number: rank must be 1, 2, or 3");
  if (n == 3 && !allow_n3) {
    throw ArgumentError("rep_number: rank 3 must be explicitly enabled");
  }

  std::vector<long> diag(n);
  long max_diag = 0;
  for (int i = 0; i < n; ++i) {
    if (!t.at(i, i).fits_slong_p()) throw ArgumentError("rep_number: index too large");
    diag[i] = t.at(i, i).get_si();
    if (diag[i] < 0) return 0;
    max_diag = std::max(max_diag, diag[i]);
  }
  std::vector<std::vector<long>> off(n, std::vector<long>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) off[i][j] = t.at(i, j).get_si();
  }

  auto gram = gram_to_long(s.gram);
  auto vecs = short_vectors(s, max_diag, parallel);
  std::vector<std::vector<std::vector<long>>> by_norm(max_diag + 1);
  for (auto& v : vecs) {
    long q = inner_product(gram, v, v);
    if (q <= max_diag) by_norm[q].push_back(std::move(v));
  }

  const auto& g0 = by_norm[diag[0]];
  if (n == 1) return static_cast<long>(g0.size());

  const auto& g1 = by_norm[diag[1]];
  long count = 0;
  int workers = parallel ? worker_count() : 1;
  if (n == 2) {
#pragma omp parallel for schedule(dynamic) reduction(+ : count) num_threads(workers)
    for (size_t i = 0; i < g0.size(); ++i) {
      for (const auto& w : g1) {
        if (inner_product(gram, g0[i], w) == off[0][1]) ++count;
      }
    }
    return count;
  }

  const auto& g2 = by_norm[diag[2]];
#pragma omp parallel for schedule(dynamic) reduction(+ : count) num_threads(workers)
  for (size_t i = 0; i < g0.size(); ++i) {
    for (const auto& w : g1) {
      if (inner_product(gram, g0[i], w) != off[0][1]) continue;
      for (const auto& u : g2) {
        if (inner_product(gram, g0[i], u) == off[0][2] &&
            inner_product(gram, w, u) == off[1][2]) {
          ++count;
        }
      }
    }
  }
  return count;
}

}  // namespace sgl
