#include "hecke.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>

#include "errors.hpp"

namespace sgl {

namespace {

bool is_prime_long(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Z z_pow(const Z& base, long e) {
  Z r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

Q q_pow(long base, long e) {
  if (e >= 0) return Q(z_pow(Z(base), e));
  Q r(1, z_pow(Z(base), -e));
  r.canonicalize();
  return r;
}

int valuation(Z n, long p) {
  int v = 0;
  while (n != 0 && mpz_divisible_ui_p(n.get_mpz_t(), p)) {
    n /= p;
    ++v;
  }
  return v;
}

// "T" acts with similitude p, "Ti" with p^2 landing in the rank g - i piece.
struct OpSpec {
  int delta;
  int type;
};

OpSpec parse_op(const std::string& op, int genus) {
  if (op == "T") return {1, -1};
  if (op.size() == 2 && op[0] == 'T' && op[1] >= '0' && op[1] <= '9') {
    int i = op[1] - '0';
    if (i <= genus) return {2, i};
  }
  throw ArgumentError("unknown hecke operator \"" + op + "\" for genus " +
                      std::to_string(genus));
}

// D = l * A^{-T}; empty when that matrix is not integral.
std::optional<ZMat> paired_block(const ZMat& a, long l) {
  QMat ainv;
  if (!a.to_q().inverse(ainv)) return std::nullopt;
  QMat dq = ainv.transpose() * Q(l);
  if (!dq.is_integral()) return std::nullopt;
  int g = a.rows();
  ZMat d(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) d.at(i, j) = dq.at(i, j).get_num();
  return d;
}

ZMat assemble(const CosetRep& r) {
  int g = r.a.rows();
  ZMat m(2 * g, 2 * g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      m.at(i, j) = r.a.at(i, j);
      m.at(i, g + j) = r.b.at(i, j);
      m.at(g + i, g + j) = r.d.at(i, j);
    }
  return m;
}

// Ranks match the elementary divisor pattern (1^{g-i}, p^i, ...; det l^g).
int coset_type(const CosetRep& r) {
  auto divs = assemble(r).elementary_divisors();
  int ones = 0;
  for (const Z& d : divs)
    if (d == 1) ++ones;
  return r.a.rows() - ones;
}

// Symmetric integer matrices with entries in [0, l) in a fixed scan order.
std::vector<ZMat> symmetric_residues(int g, long l) {
  std::vector<ZMat> out;
  if (g == 1) {
    for (long c = 0; c < l; ++c) {
      ZMat m(1, 1);
      m.at(0, 0) = c;
      out.push_back(m);
    }
    return out;
  }
  for (long c00 = 0; c00 < l; ++c00)
    for (long c01 = 0; c01 < l; ++c01)
      for (long c11 = 0; c11 < l; ++c11) {
        ZMat m(2, 2);
        m.at(0, 0) = c00;
        m.at(0, 1) = c01;
        m.at(1, 0) = c01;
        m.at(1, 1) = c11;
        out.push_back(m);
      }
  return out;
}

std::vector<ZMat> upper_blocks(int genus, long p, int delta) {
  std::vector<ZMat> out;
  long pmax = 1;
  for (int i = 0; i < delta; ++i) pmax *= p;
  if (genus == 1) {
    for (long d0 = 1; d0 <= pmax; d0 *= p) {
      ZMat a(1, 1);
      a.at(0, 0) = d0;
      out.push_back(a);
    }
    return out;
  }
  for (long d0 = 1; d0 <= pmax; d0 *= p)
    for (long d1 = 1; d1 <= pmax; d1 *= p)
      for (long a01 = 0; a01 < d1; ++a01) {
        ZMat a(2, 2);
        a.at(0, 0) = d0;
        a.at(0, 1) = a01;
        a.at(1, 1) = d1;
        out.push_back(a);
      }
  return out;
}

Q rational_from_phases(const std::vector<Q>& acc, long p, long l) {
  if (l == 1) return acc[0];
  if (l == p) {
    for (long c = 2; c < l; ++c)
      if (acc[c] != acc[1])
        throw InconsistencyError(
            "phase sums differ across primitive residues; the image is not "
            "rational");
    return acc[0] - acc[1];
  }
  if (l == p * p) {
    for (long c = 1; c < l; ++c) {
      if (c % p == 0) continue;
      if (acc[c] != acc[1])
        throw InconsistencyError(
            "phase sums differ across primitive residues; the image is not "
            "rational");
    }
    for (long c = 2 * p; c < l; c += p)
      if (acc[c] != acc[p])
        throw InconsistencyError(
            "phase sums differ across imprimitive residues; the image is not "
            "rational");
    return acc[0] - acc[p];
  }
  throw ArgumentError("similitude exponent beyond the supported range");
}

// Left GL_g(Z) reduction to the canonical triangular block, B carried along.
void normalize_blocks(ZMat& a, ZMat& b) {
  int g = a.rows();
  if (g == 2 && a.at(1, 0) != 0) {
    Z gg, x, y;
    mpz_gcdext(gg.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
               a.at(0, 0).get_mpz_t(), a.at(1, 0).get_mpz_t());
    Z r0 = a.at(0, 0) / gg, r1 = a.at(1, 0) / gg;
    ZMat u(2, 2);
    u.at(0, 0) = x;
    u.at(0, 1) = y;
    u.at(1, 0) = -r1;
    u.at(1, 1) = r0;
    a = u * a;
    b = u * b;
  }
  for (int i = 0; i < g; ++i) {
    if (a.at(i, i) < 0) {
      for (int j = 0; j < g; ++j) {
        a.at(i, j) = -a.at(i, j);
        b.at(i, j) = -b.at(i, j);
      }
    }
  }
  if (g == 2 && a.at(1, 1) != 0) {
    Z q;
    mpz_fdiv_q(q.get_mpz_t(), a.at(0, 1).get_mpz_t(), a.at(1, 1).get_mpz_t());
    if (q != 0) {
      for (int j = 0; j < g; ++j) {
        a.at(0, j) -= q * a.at(1, j);
        b.at(0, j) -= q * b.at(1, j);
      }
    }
  }
}

std::vector<long> canonical_key(const ZMat& a, const ZMat& pc) {
  std::vector<long> key;
  int g = a.rows();
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) key.push_back(a.at(i, j).get_si());
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) key.push_back(pc.at(i, j).get_si());
  return key;
}

}  // namespace

long HeckeElement::degree() const {
  long d = 0;
  for (const auto& r : cosets) d += r.mult;
  return d;
}

HeckeElement coset_reps(const std::string& op, long p, int genus) {
  if (genus < 1 || genus > 2)
    throw ArgumentError("coset enumeration covers genus 1 and 2 only");
  if (!is_prime_long(p)) throw ArgumentError("similitude prime expected");
  OpSpec spec = parse_op(op, genus);
  long l = spec.delta == 1 ? p : p * p;

  HeckeElement e;
  e.genus = genus;
  e.p = p;
  e.l = l;
  e.label = op + "(" + std::to_string(l) + ")";

  auto residues = symmetric_residues(genus, l);
  for (const ZMat& a : upper_blocks(genus, p, spec.delta)) {
    auto d = paired_block(a, l);
    if (!d) continue;
    for (const ZMat& pm : residues) {
      ZMat bn = pm * (*d);
      bool integral = true;
      for (int i = 0; i < genus && integral; ++i)
        for (int j = 0; j < genus && integral; ++j)
          if (!mpz_divisible_ui_p(bn.at(i, j).get_mpz_t(), l))
            integral = false;
      if (!integral) continue;
      ZMat b(genus, genus);
      for (int i = 0; i < genus; ++i)
        for (int j = 0; j < genus; ++j) b.at(i, j) = bn.at(i, j) / l;
      CosetRep rep{a, b, *d, 1};
      if (spec.delta == 2 && coset_type(rep) != spec.type) continue;
      e.cosets.push_back(std::move(rep));
    }
  }
  return e;
}

HeckeElement hecke_identity(int genus, long p) {
  HeckeElement e;
  e.genus = genus;
  e.p = p;
  e.l = 1;
  e.label = "1";
  e.cosets.push_back(
      {ZMat::identity(genus), ZMat(genus, genus), ZMat::identity(genus), 1});
  return e;
}

FourierExpansion hecke_apply_element(const FourierExpansion& f,
                                     const HeckeElement& e) {
  if (f.genus() != e.genus)
    throw ArgumentError("operator genus does not match the expansion");
  if (f.scale() != 1)
    throw ArgumentError("hecke action needs the integral index grid");
  if (f.weight().get_den() != 1)
    throw ArgumentError("hecke action needs an integer weight");
  int g = f.genus();
  long k = f.weight().get_num().get_si();
  long l = e.l;
  long in_bound = f.trace_bound();
  long ceiling = in_bound / l;
  bool cuspidal = f.is_cuspidal_support();

  Q norm = q_pow(l, g * k - g * (g + 1) / 2);

  struct CosetData {
    ZMat dt;     // D^T
    ZMat phase;  // D^T B, symmetric
    Q coeff;     // mult / det(D)^k
  };
  std::vector<CosetData> cd;
  cd.reserve(e.cosets.size());
  for (const auto& r : e.cosets) {
    ZMat dt = r.d.transpose();
    Z detd = r.d.det();
    if (detd <= 0) throw InconsistencyError("coset with non-positive det D");
    Q coeff = Q(r.mult) * (k >= 0 ? Q(1, z_pow(detd, k)) : Q(z_pow(detd, -k)));
    coeff.canonicalize();
    cd.push_back({dt, dt * r.b, coeff});
  }

  // A middle coset can pull a source index of trace well above l times the
  // image trace, so the returned ball shrinks to the largest one that the
  // stored sources determine completely instead of failing outright.
  long fail_trace = ceiling + 1;
  std::map<FKey, Q> staged;
  for (const FKey& kk : even_psd_keys(g, ceiling)) {
    ZMat km = key_to_mat(kk, g);
    std::vector<Q> acc(l, Q(0));
    bool any = false;
    bool determined = true;
    for (size_t j = 0; j < cd.size(); ++j) {
      const CosetRep& r = e.cosets[j];
      ZMat num = r.d * km * cd[j].dt;
      bool integral = true;
      for (int i = 0; i < g && integral; ++i)
        for (int jj = 0; jj < g && integral; ++jj)
          if (!mpz_divisible_ui_p(num.at(i, jj).get_mpz_t(), l))
            integral = false;
      if (!integral) continue;
      ZMat kj(g, g);
      for (int i = 0; i < g; ++i)
        for (int jj = 0; jj < g; ++jj) kj.at(i, jj) = num.at(i, jj) / l;
      bool even_diag = true;
      for (int i = 0; i < g; ++i)
        if (mpz_odd_p(kj.at(i, i).get_mpz_t())) even_diag = false;
      if (!even_diag) continue;
      Z tr = kj.trace();
      Q val;
      if (tr <= in_bound) {
        val = f.get(key_from_mat(kj));
      } else if (cuspidal && kj.det() == 0) {
        continue;
      } else {
        determined = false;
        break;
      }
      if (val == 0) continue;
      Z twice = (km * cd[j].phase).trace();
      if (mpz_odd_p(twice.get_mpz_t()))
        throw InconsistencyError("phase exponent left the integers");
      Z ph = twice / 2;
      long c = static_cast<long>(mpz_fdiv_ui(ph.get_mpz_t(), l));
      acc[c] += cd[j].coeff * val;
      any = true;
    }
    if (!determined) {
      fail_trace = std::min(fail_trace, key_trace(kk, g));
      continue;
    }
    if (!any) continue;
    Q value = rational_from_phases(acc, e.p, l) * norm;
    value.canonicalize();
    if (value != 0) staged.emplace(kk, std::move(value));
  }
  long out_bound = fail_trace - 1;
  if (out_bound < 0)
    throw TruncationError(
        "stored coefficients do not determine any image coefficient; extend "
        "the input past trace bound " +
        std::to_string(in_bound));
  FourierExpansion out(g, f.weight(), 1, out_bound);
  for (const auto& [kk, value] : staged)
    if (key_trace(kk, g) <= out_bound) out.set(kk, value);
  return out;
}

FourierExpansion hecke_apply(const FourierExpansion& f, const std::string& op,
                             long p) {
  return hecke_apply_element(f, coset_reps(op, p, f.genus()));
}

Q eigenvalue(const FourierExpansion& f, const std::string& op, long p) {
  FourierExpansion img = hecke_apply(f, op, p);
  int g = f.genus();
  const FKey* ref = nullptr;
  for (const auto& [kk, v] : f.coeffs()) {
    if (v != 0 && key_trace(kk, g) <= img.trace_bound()) {
      ref = &kk;
      break;
    }
  }
  if (!ref)
    throw TruncationError(
        "no nonzero reference coefficient inside the image truncation");
  Q lam = img.get(*ref) / f.get(*ref);
  lam.canonicalize();
  for (const auto& [kk, v] : f.coeffs()) {
    if (key_trace(kk, g) > img.trace_bound()) continue;
    if (img.get(kk) != lam * v)
      throw InconsistencyError(
          "expansion is not an eigenvector of " + op + " at p = " +
          std::to_string(p) + ": coefficients are not proportional");
  }
  for (const auto& [kk, v] : img.coeffs()) {
    if (v != lam * f.get(kk))
      throw InconsistencyError(
          "expansion is not an eigenvector of " + op + " at p = " +
          std::to_string(p) + ": image has support outside the input");
  }
  return lam;
}

LaurentPoly LaurentPoly::multiply(const LaurentPoly& o) const {
  LaurentPoly out;
  out.genus = genus;
  for (const auto& [m1, c1] : terms)
    for (const auto& [m2, c2] : o.terms) {
      std::array<int, 4> m{};
      for (int i = 0; i < 4; ++i) m[i] = m1[i] + m2[i];
      out.terms[m] += c1 * c2;
    }
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = it->second == 0 ? out.terms.erase(it) : std::next(it);
  return out;
}

LaurentPoly satake_Q(const HeckeElement& e) {
  int g = e.genus;
  int delta = valuation(Z(e.l), e.p);
  LaurentPoly q;
  q.genus = g;
  for (const auto& r : e.cosets) {
    std::array<int, 4> mon{};
    mon[0] = delta;
    long pexp = -static_cast<long>(delta) * g * (g + 1) / 2;
    for (int nu = 1; nu <= g; ++nu) {
      int knu = valuation(r.a.at(nu - 1, nu - 1), e.p);
      mon[nu] = knu;
      pexp += static_cast<long>(g + 1 - nu) * knu;
    }
    q.terms[mon] += Q(r.mult) * q_pow(e.p, pexp);
  }
  for (auto it = q.terms.begin(); it != q.terms.end();)
    it = it->second == 0 ? q.terms.erase(it) : std::next(it);
  return q;
}

LaurentPoly weyl_reflect(const LaurentPoly& f, int j) {
  if (j < 1 || j > f.genus) throw ArgumentError("reflection index out of range");
  LaurentPoly out;
  out.genus = f.genus;
  for (const auto& [m, c] : f.terms) {
    std::array<int, 4> mm = m;
    mm[j] = m[0] - m[j];
    out.terms[mm] += c;
  }
  return out;
}

LaurentPoly weyl_swap(const LaurentPoly& f, int i, int j) {
  if (i < 1 || i > f.genus || j < 1 || j > f.genus)
    throw ArgumentError("swap index out of range");
  LaurentPoly out;
  out.genus = f.genus;
  for (const auto& [m, c] : f.terms) {
    std::array<int, 4> mm = m;
    std::swap(mm[i], mm[j]);
    out.terms[mm] += c;
  }
  return out;
}

long m_count(int s, int i, long p) {
  if (s < 1 || s > 3) throw ArgumentError("symmetric size out of range");
  if (i < 0 || i > s) throw ArgumentError("corank out of range");
  if (!is_prime_long(p) || p > 7)
    throw ArgumentError("prime out of the supported range");
  int dim = s * (s + 1) / 2;
  long total = 1;
  for (int t = 0; t < dim; ++t) total *= p;

  long count = 0;
  std::vector<long> m(s * s);
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int r = 0; r < s; ++r)
      for (int cc = r; cc < s; ++cc) {
        long v = c % p;
        c /= p;
        m[r * s + cc] = v;
        m[cc * s + r] = v;
      }
    // rank over F_p by elimination
    std::vector<long> w = m;
    int rank = 0;
    for (int col = 0; col < s && rank < s; ++col) {
      int piv = -1;
      for (int r = rank; r < s; ++r)
        if (w[r * s + col] % p != 0) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      for (int cc = 0; cc < s; ++cc)
        std::swap(w[piv * s + cc], w[rank * s + cc]);
      long inv = 1, base = w[rank * s + col] % p, ee = p - 2;
      while (ee > 0) {
        if (ee & 1) inv = inv * base % p;
        base = base * base % p;
        ee >>= 1;
      }
      for (int r = 0; r < s; ++r) {
        if (r == rank) continue;
        long factor = w[r * s + col] % p * inv % p;
        if (factor == 0) continue;
        for (int cc = 0; cc < s; ++cc)
          w[r * s + cc] =
              ((w[r * s + cc] - factor * w[rank * s + cc]) % p + p * p) % p;
      }
      ++rank;
    }
    if (s - rank == i) ++count;
  }
  return count;
}

std::vector<SatakeData> satake_solve(long k, long p, const Q& lambda_tp,
                                     const Q& lambda_t1, const Q& lambda_t2) {
  if (!is_prime_long(p)) throw ArgumentError("similitude prime expected");
  if (k < 3) throw ArgumentError("weight too small for genus 2 parameters");
  Q big_p = q_pow(p, 2 * k - 3);
  if (lambda_t2 != q_pow(p, 2 * k - 6))
    throw InconsistencyError(
        "the rank 0 similitude p^2 eigenvalue is pinned by the weight and "
        "does not match");
  // p * lambda_t1 recovers s^2 E_1 (1 + E_2) after removing the corank term.
  Q c = Q(p) * lambda_t1 - Q(p * p - 1) * big_p / Q(p * p);
  c.canonicalize();

  std::vector<SatakeData> out;
  long jmax = 4 * (2 * k - 3);
  for (int sign = 0; sign < 2; ++sign) {
    for (long j = 0; j <= jmax; ++j) {
      Q sigma = q_pow(p, j);
      if (sign) sigma = -sigma;
      Q base = sigma + big_p;
      if (base == 0) continue;
      Q lhs = base * base + c * sigma;
      if (lhs * lhs != lambda_tp * lambda_tp * sigma * base * base) continue;
      Q a = c * sigma / base;
      a.canonicalize();
      Q closure = sigma + a + big_p;
      if (closure * closure != lambda_tp * lambda_tp * sigma) continue;
      out.push_back({2, p, k, lambda_tp, sigma, a, big_p});
    }
  }
  if (out.empty())
    throw InconsistencyError(
        "eigenvalue triple admits no rational satake parameters");
  std::sort(out.begin(), out.end(),
            [](const SatakeData& x, const SatakeData& y) {
              return x.sigma < y.sigma;
            });
  return out;
}

SatakeData satake_solve_g1(long k, long p, const Q& ap) {
  if (!is_prime_long(p)) throw ArgumentError("similitude prime expected");
  if (k < 2) throw ArgumentError("weight too small for genus 1 parameters");
  SatakeData d;
  d.genus = 1;
  d.p = p;
  d.k = k;
  d.lambda1 = ap;
  d.sigma = 0;
  d.s2e1 = q_pow(p, k - 1);
  d.s2e2 = 0;
  return d;
}

HeckeElement hecke_multiply(const HeckeElement& e1, const HeckeElement& e2) {
  if (e1.genus != e2.genus)
    throw ArgumentError("operator product needs matching genus");
  if (e1.p != e2.p)
    throw ArgumentError("operator product needs a common prime");
  int g = e1.genus;
  long l = e1.l * e2.l;

  std::map<std::vector<long>, std::pair<CosetRep, long>> classes;
  for (const auto& r1 : e1.cosets)
    for (const auto& r2 : e2.cosets) {
      ZMat a = r1.a * r2.a;
      ZMat b = r1.a * r2.b + r1.b * r2.d;
      normalize_blocks(a, b);
      auto d = paired_block(a, l);
      if (!d) throw InconsistencyError("coset product left the lattice");
      // P = B A^T is symmetric; its residue mod l pins the class.
      ZMat pmat = b * a.transpose();
      ZMat pc(g, g);
      for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
          Z v;
          mpz_fdiv_r_ui(v.get_mpz_t(), pmat.at(i, j).get_mpz_t(), l);
          pc.at(i, j) = v;
        }
      ZMat bc(g, g);
      {
        ZMat bn = pc * (*d);
        for (int i = 0; i < g; ++i)
          for (int j = 0; j < g; ++j) {
            if (!mpz_divisible_ui_p(bn.at(i, j).get_mpz_t(), l))
              throw InconsistencyError("coset product left the lattice");
            bc.at(i, j) = bn.at(i, j) / l;
          }
      }
      auto key = canonical_key(a, pc);
      auto it = classes.find(key);
      long mult = r1.mult * r2.mult;
      if (it == classes.end())
        classes.emplace(key, std::make_pair(CosetRep{a, bc, *d, 0}, mult));
      else
        it->second.second += mult;
    }

  HeckeElement out;
  out.genus = g;
  out.p = e1.p;
  out.l = l;
  out.label = e1.label + "*" + e2.label;
  for (auto& [key, rep] : classes) {
    rep.first.mult = rep.second;
    out.cosets.push_back(rep.first);
  }
  return out;
}

}  // namespace sgl
