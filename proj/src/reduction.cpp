#include "reduction.hpp"

#include <cmath>
#include <map>
#include <set>

#include "errors.hpp"
#include "parallel.hpp"

namespace sgl {

int default_search_bound(int g) { return g <= 3 ? 2 : 3; }

namespace {

// Odometer over integer vectors with sup-norm <= bound, lexicographic.
bool next_vector(std::vector<long>& a, long bound) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    if (a[i] < bound) {
      ++a[i];
      for (size_t j = i + 1; j < a.size(); ++j) a[j] = -bound;
      return true;
    }
  }
  return false;
}

bool tail_coprime(const std::vector<long>& a, int k) {
  Z g(0);
  for (size_t i = k; i < a.size(); ++i)
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Z(a[i]).get_mpz_t());
  return g == 1;
}

Q quad_value(const QMat& y, const std::vector<long>& a) {
  int g = y.rows();
  Q v(0);
  for (int i = 0; i < g; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < g; ++j) {
      if (a[j] == 0) continue;
      v += y.at(i, j) * a[i] * a[j];
    }
  }
  return v;
}

}  // namespace

bool is_minkowski_reduced(const QMat& y, int search_bound) {
  int g = y.rows();
  if (!is_positive_definite(y)) return false;
  if (search_bound <= 0) search_bound = default_search_bound(g);
  // fast necessary conditions: sorted diagonal, nonnegative superdiagonal
  for (int k = 0; k + 1 < g; ++k) {
    if (y.at(k, k) > y.at(k + 1, k + 1)) return false;
    if (y.at(k, k + 1) < 0) return false;
  }
  std::vector<long> a(g, -search_bound);
  do {
    for (int k = 0; k < g; ++k) {
      if (!tail_coprime(a, k)) continue;
      if (quad_value(y, a) < y.at(k, k)) return false;
    }
  } while (next_vector(a, search_bound));
  return true;
}

MinkowskiResult minkowski_reduce(const QMat& y) {
  int g = y.rows();
  if (g > 4) throw ArgumentError("minkowski reduction supports g <= 4");
  if (!is_positive_definite(y))
    throw ArgumentError("minkowski reduction needs a positive definite input");
  long bound = default_search_bound(g);
  MinkowskiResult res{y, ZMat::identity(g), 0};

  bool moved = true;
  while (moved) {
    moved = false;
    for (int k = 0; k < g && !moved; ++k) {
      // minimize a Y a^T over vectors with coprime tail, lex tie-break
      std::vector<long> a(g, -bound), best;
      Q best_v;
      do {
        if (!tail_coprime(a, k)) continue;
        Q v = quad_value(res.reduced, a);
        if (best.empty() || v < best_v) {
          best = a;
          best_v = v;
        }
      } while (next_vector(a, bound));
      if (best_v >= res.reduced.at(k, k)) continue;

      std::vector<Z> tail(best.begin() + k, best.end());
      ZMat v = unimodular_with_first_row(tail);
      ZMat t = ZMat::identity(g);
      for (int i = 0; i < g - k; ++i)
        for (int j = 0; j < g - k; ++j) t.at(k + i, k + j) = v.at(i, j);
      for (int j = 0; j < k; ++j) t.at(k, j) = best[j];
      res.reduced = gl_transform(res.reduced, t);
      res.transform = t * res.transform;
      ++res.steps;
      moved = true;
    }
  }

  for (int k = 0; k + 1 < g; ++k) {
    if (res.reduced.at(k, k + 1) >= 0) continue;
    ZMat d = ZMat::identity(g);
    d.at(k + 1, k + 1) = -1;
    res.reduced = gl_transform(res.reduced, d);
    res.transform = d * res.transform;
    ++res.steps;
  }
  return res;
}

namespace {

// Embedded inversion in the first coordinate: the SL2 block (0 1; -1 0)
// acting on (z_1, w_1), identity elsewhere.
QMat iota_first(int g) {
  QMat m(2 * g, 2 * g);
  for (int i = 1; i < g; ++i) {
    m.at(i, i) = 1;
    m.at(g + i, g + i) = 1;
  }
  m.at(0, g) = 1;
  m.at(g, 0) = -1;
  return m;
}

QMat gl_embed(const ZMat& u) {
  int g = u.rows();
  QMat ui;
  if (!u.to_q().inverse(ui)) throw ArgumentError("singular transform");
  QMat e(2 * g, 2 * g);
  e.set_block(0, 0, u.to_q());
  e.set_block(g, g, ui.transpose());
  return e;
}

QMat translation(int g, const ZMat& b) {
  QMat t = QMat::identity(2 * g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) t.at(i, g + j) = Q(b.at(i, j));
  return t;
}

ZMat bottom_class(const QMat& gamma) {
  int g = gamma.rows() / 2;
  ZMat cd(g, 2 * g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < 2 * g; ++j)
      cd.at(i, j) = gamma.at(g + i, j).get_num();
  return hnf_rows(cd);
}

bool class_is_vacuous(const ZMat& cls) {
  int g = cls.rows();
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      if (cls.at(i, j) != 0) return false;
  return true;
}

bool class_within(const ZMat& cls, long sup) {
  for (int i = 0; i < cls.rows(); ++i)
    for (int j = 0; j < cls.cols(); ++j)
      if (abs(cls.at(i, j)) > sup) return false;
  return true;
}

std::vector<ZMat> symmetric_ints(int g, long bound) {
  int nfree = g * (g + 1) / 2;
  std::vector<long> v(nfree, -bound);
  std::vector<ZMat> out;
  do {
    ZMat b(g, g);
    int idx = 0;
    for (int i = 0; i < g; ++i)
      for (int j = i; j < g; ++j) {
        b.at(i, j) = v[idx];
        b.at(j, i) = v[idx];
        ++idx;
      }
    out.push_back(b);
  } while (next_vector(v, bound));
  return out;
}

std::vector<ZMat> unimodular_ints(int g, long bound) {
  std::vector<long> v(g * g, -bound);
  std::vector<ZMat> out;
  do {
    ZMat u(g, g);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) u.at(i, j) = v[i * g + j];
    Z d = u.det();
    if (d == 1 || d == -1) out.push_back(u);
  } while (next_vector(v, bound));
  return out;
}

std::vector<QMat> build_witnesses(int g) {
  std::vector<QMat> seeds;
  seeds.push_back(j_mat(g));
  std::vector<long> v(g, -2);
  do {
    int lead = -1;
    for (int i = 0; i < g; ++i)
      if (v[i] != 0) {
        lead = i;
        break;
      }
    if (lead < 0 || v[lead] < 0) continue;  // skip zero, dedup by sign
    if (!tail_coprime(v, 0)) continue;
    std::vector<Z> w(v.begin(), v.end());
    QMat e = gl_embed(unimodular_with_first_row(w));
    QMat ei;
    e.inverse(ei);
    seeds.push_back(ei * iota_first(g) * e);
  } while (next_vector(v, 2));
  if (g == 3) {
    // inversions in two of the three coordinates
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        QMat m(6, 6);
        for (int k = 0; k < 3; ++k) {
          if (k == i || k == j) {
            m.at(k, 3 + k) = 1;
            m.at(3 + k, k) = -1;
          } else {
            m.at(k, k) = 1;
            m.at(3 + k, 3 + k) = 1;
          }
        }
        seeds.push_back(m);
      }
  }

  std::vector<ZMat> trans = symmetric_ints(g, 1);
  std::vector<ZMat> uni = g <= 2 ? unimodular_ints(g, 1) : std::vector<ZMat>{};

  std::map<ZMat, QMat> classes;
  auto offer = [&](const QMat& gamma) {
    ZMat cls = bottom_class(gamma);
    if (class_is_vacuous(cls) || !class_within(cls, 2)) return;
    classes.emplace(cls, gamma);
  };
  std::vector<QMat> tmats;
  tmats.reserve(trans.size());
  for (const ZMat& b : trans) tmats.push_back(translation(g, b));
  for (const QMat& s : seeds) {
    for (const QMat& t : tmats) {
      QMat st = s * t;
      offer(st);
      for (const ZMat& u : uni) offer(st * gl_embed(u));
      if (g <= 2) {
        // words with a second inversion reach lower blocks with det C = 2
        for (const QMat& s2 : seeds) {
          QMat sts = st * s2;
          for (const QMat& t2 : tmats) offer(sts * t2);
        }
      }
    }
  }
  std::vector<QMat> out;
  out.reserve(classes.size());
  for (auto& kv : classes) out.push_back(kv.second);
  return out;
}

}  // namespace

const std::vector<QMat>& siegel_witnesses(int g) {
  switch (g) {
    case 1: {
      static const std::vector<QMat> w1 = build_witnesses(1);
      return w1;
    }
    case 2: {
      static const std::vector<QMat> w2 = build_witnesses(2);
      return w2;
    }
    case 3: {
      static const std::vector<QMat> w3 = build_witnesses(3);
      return w3;
    }
    default:
      throw ArgumentError("siegel domain machinery supports g <= 3");
  }
}

std::vector<ZMat> bottom_pair_classes_up_to(int g, int bound) {
  std::set<ZMat> classes;
  std::vector<long> v(2 * g * g, -bound);
  do {
    ZMat c(g, g), d(g, g);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) {
        c.at(i, j) = v[i * g + j];
        d.at(i, j) = v[g * g + i * g + j];
      }
    bool czero = true;
    for (int i = 0; i < g * g && czero; ++i)
      if (v[i] != 0) czero = false;
    if (czero) continue;
    if (!(c * d.transpose()).is_symmetric()) continue;
    ZMat cd(g, 2 * g);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) {
        cd.at(i, j) = c.at(i, j);
        cd.at(i, g + j) = d.at(i, j);
      }
    std::vector<Z> mg = cd.minor_gcds();
    if (mg[g - 1] != 1) continue;  // not completable to Sp(2g, Z)
    classes.insert(hnf_rows(cd));
  } while (next_vector(v, bound));
  return {classes.begin(), classes.end()};
}

namespace {

// |det(C Omega + D)|^2 as an exact rational.
Q cocycle_norm(const QMat& gamma, const SiegelPoint& om) {
  int g = om.g;
  QMat c = gamma.block(g, 0, g, g), d = gamma.block(g, g, g, g);
  QMat zm(g, g);
  QCMat den = QCMat::from_parts(c, zm) * QCMat::from_parts(om.x, om.y) +
              QCMat::from_parts(d, zm);
  QC dd = den.det();
  return dd.re * dd.re + dd.im * dd.im;
}

}  // namespace

bool is_siegel_reduced(const SiegelPoint& om) {
  if (!is_minkowski_reduced(om.y)) return false;
  Q half(1, 2);
  for (int i = 0; i < om.g; ++i)
    for (int j = 0; j < om.g; ++j) {
      Q v = om.x.at(i, j);
      if (v > half || v < -half) return false;
    }
  for (const QMat& gamma : siegel_witnesses(om.g))
    if (cocycle_norm(gamma, om) < 1) return false;
  return true;
}

SiegelResult siegel_reduce(const SiegelPoint& om) {
  int g = om.g;
  if (g > 3) throw ArgumentError("siegel reduction supports g <= 3");
  SiegelResult res{om, QMat::identity(2 * g), 0};
  const std::vector<QMat>& wits = siegel_witnesses(g);

  for (int guard = 0;; ++guard) {
    if (guard > 100000)
      throw InconsistencyError("siegel reduction exceeded the step cap");
    if (!is_minkowski_reduced(res.reduced.y)) {
      MinkowskiResult mr = minkowski_reduce(res.reduced.y);
      QMat e = gl_embed(mr.transform);
      res.reduced = act(SimilitudeMatrix(e), res.reduced);
      res.transform = e * res.transform;
      res.steps += mr.steps;
      continue;
    }
    ZMat b(g, g);
    bool translate = false;
    Q half(1, 2);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) {
        Q x = res.reduced.x.at(i, j);
        if (x > half || x < -half) {
          Q sh = x + half;
          Z fl;
          mpz_fdiv_q(fl.get_mpz_t(), sh.get_num_mpz_t(), sh.get_den_mpz_t());
          b.at(i, j) = -fl;
          translate = true;
        }
      }
    if (translate) {
      QMat t = translation(g, b);
      res.reduced = act(SimilitudeMatrix(t), res.reduced);
      res.transform = t * res.transform;
      ++res.steps;
      continue;
    }
    bool hit = false;
    for (const QMat& gamma : wits) {
      if (cocycle_norm(gamma, res.reduced) < 1) {
        res.reduced = act(SimilitudeMatrix(gamma), res.reduced);
        res.transform = gamma * res.transform;
        ++res.steps;
        hit = true;
        break;
      }
    }
    if (!hit) break;
  }
  return res;
}

Q bernoulli_number(int n) {
  static std::vector<Q> cache{Q(1)};
  while (static_cast<int>(cache.size()) <= n) {
    int m = static_cast<int>(cache.size());
    Q acc(0);
    Z binom(1);  // C(m+1, j) updated incrementally
    for (int j = 0; j < m; ++j) {
      acc += Q(binom) * cache[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    cache.push_back(-acc / Q(binom));  // binom == C(m+1, m) == m+1
  }
  return cache[n];
}

ExactVolume siegel_volume(int g) {
  if (g < 1 || g > 8) throw ArgumentError("volume supports 1 <= g <= 8");
  ExactVolume out;
  out.rational = 2;
  out.pi_power = g * (g + 1) / 2;
  Z fact(1);
  for (int k = 1; k <= g; ++k) {
    // zeta(2k) = zcoef * pi^{2k}
    Z pow4k(1);
    mpz_ui_pow_ui(pow4k.get_mpz_t(), 2, 2 * k);
    Z fact2k(1);
    mpz_fac_ui(fact2k.get_mpz_t(), 2 * k);
    Q zcoef = bernoulli_number(2 * k) * Q(pow4k) / Q(2 * fact2k);
    if (zcoef < 0) zcoef = -zcoef;
    out.rational *= Q(fact) * zcoef;
    fact *= k;
  }
  out.float_value =
      out.rational.get_d() * std::pow(3.14159265358979323846, out.pi_power);
  return out;
}

double mc_volume_f1(std::int64_t samples, std::uint64_t seed, bool parallel) {
  siegel_witnesses(1);  // warm the cache before the parallel region
  const std::int64_t chunk = 8192;
  const std::int64_t nchunks = (samples + chunk - 1) / chunk;
  std::vector<std::int64_t> hits(nchunks, 0);
  const long den = 1 << 20;

  int threads = parallel ? worker_count() : 1;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t ci = 0; ci < nchunks; ++ci) {
    std::uint64_t state = seed ^ (0x9E3779B97F4A7C15ULL * (ci + 1));
    auto draw = [&state]() {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      return state >> 11;
    };
    draw();
    std::int64_t lo = ci * chunk;
    std::int64_t hi = std::min<std::int64_t>(samples, lo + chunk);
    std::int64_t acc = 0;
    for (std::int64_t s = lo; s < hi; ++s) {
      long xn = static_cast<long>(draw() % den);
      long tn = static_cast<long>(draw() % den) + 1;
      Q x(xn, den);
      x.canonicalize();
      x -= Q(1, 2);
      Q t(tn, den);
      t.canonicalize();
      t *= Q(7, 6);
      Q y = 1 / t;
      QMat xm(1, 1), ym(1, 1);
      xm.at(0, 0) = x;
      ym.at(0, 0) = y;
      if (is_siegel_reduced(SiegelPoint(xm, ym))) ++acc;
    }
    hits[ci] = acc;
  }
  std::int64_t total = 0;
  for (std::int64_t h : hits) total += h;
  return static_cast<double>(total) / static_cast<double>(samples) * (7.0 / 6.0);
}

}  // namespace sgl
