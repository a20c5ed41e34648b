#include "fourier.hpp"

#include <algorithm>
#include <atomic>
#include <utility>

#include "errors.hpp"
#include "parallel.hpp"

namespace sgl {

namespace {

int diag_slot(int genus, int i) {
  // Offset of entry (i, i) in the row-wise upper triangle.
  return i * genus - i * (i - 1) / 2;
}

Q q_from_int128(__int128 x) {
  bool neg = x < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(x + 1)) + 1
                            : static_cast<unsigned __int128>(x);
  Z hi(static_cast<unsigned long>(u >> 64));
  Z lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull));
  Z z;
  mpz_mul_2exp(z.get_mpz_t(), hi.get_mpz_t(), 64);
  z += lo;
  if (neg) z = -z;
  return Q(z);
}

std::vector<long> key_entries_full(const FKey& k, int genus) {
  std::vector<long> m(genus * genus, 0);
  int idx = 0;
  for (int i = 0; i < genus; ++i) {
    for (int j = i; j < genus; ++j) {
      m[i * genus + j] = k.v[idx];
      m[j * genus + i] = k.v[idx];
      ++idx;
    }
  }
  return m;
}

long subset_minor(const std::vector<long>& m, int genus,
                  const std::vector<int>& rows) {
  const int n = static_cast<int>(rows.size());
  auto e = [&](int i, int j) { return m[rows[i] * genus + rows[j]]; };
  if (n == 1) return e(0, 0);
  if (n == 2) return e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
  return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
         e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
         e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

FKey key_add(const FKey& a, const FKey& b) {
  FKey out;
  for (size_t i = 0; i < out.v.size(); ++i) out.v[i] = a.v[i] + b.v[i];
  return out;
}

struct FlatItem {
  long a, b, c;
  long v;
};

bool flat_eligible(const std::map<FKey, Q>& coeffs) {
  for (const auto& [k, q] : coeffs) {
    if (q.get_den() != 1) return false;
    const Z& num = q.get_num();
    if (!num.fits_slong_p()) return false;
    long n = num.get_si();
    if (n > (1L << 62) || n < -(1L << 62)) return false;
  }
  return true;
}

}  // namespace

int key_length(int genus) { return genus * (genus + 1) / 2; }

FKey key_from_mat(const ZMat& k) {
  const int g = k.rows();
  if (!k.is_symmetric()) throw ArgumentError("index matrix must be symmetric");
  if (g > 3) throw ArgumentError("genus above 3 is not supported");
  FKey out;
  int idx = 0;
  for (int i = 0; i < g; ++i) {
    for (int j = i; j < g; ++j) {
      if (!k.at(i, j).fits_slong_p()) throw ArgumentError("index entry too large");
      out.v[idx++] = k.at(i, j).get_si();
    }
  }
  return out;
}

ZMat key_to_mat(const FKey& k, int genus) {
  ZMat m(genus, genus);
  int idx = 0;
  for (int i = 0; i < genus; ++i) {
    for (int j = i; j < genus; ++j) {
      m.at(i, j) = k.v[idx];
      m.at(j, i) = k.v[idx];
      ++idx;
    }
  }
  return m;
}

long key_trace(const FKey& k, int genus) {
  long t = 0;
  for (int i = 0; i < genus; ++i) t += k.v[diag_slot(genus, i)];
  return t;
}

bool key_is_psd(const FKey& k, int genus) {
  if (genus == 0) return true;
  auto m = key_entries_full(k, genus);
  for (int mask = 1; mask < (1 << genus); ++mask) {
    std::vector<int> rows;
    for (int i = 0; i < genus; ++i) {
      if (mask & (1 << i)) rows.push_back(i);
    }
    if (subset_minor(m, genus, rows) < 0) return false;
  }
  return true;
}

bool key_is_pd(const FKey& k, int genus) {
  if (genus == 0) return false;
  auto m = key_entries_full(k, genus);
  std::vector<int> rows;
  for (int i = 0; i < genus; ++i) {
    rows.push_back(i);
    if (subset_minor(m, genus, rows) <= 0) return false;
  }
  return true;
}

FourierExpansion::FourierExpansion(int genus, Q weight, int scale,
                                   long trace_bound)
    : genus_(genus), weight_(std::move(weight)), scale_(scale),
      trace_bound_(trace_bound) {
  if (genus < 0 || genus > 3) throw ArgumentError("genus must be between 0 and 3");
  if (scale != 1 && scale != 4) throw ArgumentError("exponent scale must be 1 or 4");
  if (trace_bound < 0) throw ArgumentError("trace bound must be nonnegative");
  weight_.canonicalize();
}

void FourierExpansion::set(const FKey& key, const Q& value) {
  for (int i = key_length(genus_); i < 6; ++i) {
    if (key.v[i] != 0) throw ArgumentError("index has entries beyond the genus");
  }
  if (key_trace(key, genus_) > scaled_trace_bound()) {
    throw ArgumentError("index exceeds the truncation bound");
  }
  if (!key_is_psd(key, genus_)) {
    throw ArgumentError("index must be positive semidefinite");
  }
  if (scale_ == 1) {
    for (int i = 0; i < genus_; ++i) {
      if (key.v[diag_slot(genus_, i)] % 2 != 0) {
        throw ArgumentError("index diagonal must be even at unit scale");
      }
    }
  }
  if (value == 0) {
    coeffs_.erase(key);
  } else {
    coeffs_[key] = value;
  }
}

Q FourierExpansion::get(const FKey& key) const {
  auto it = coeffs_.find(key);
  return it == coeffs_.end() ? Q(0) : it->second;
}

bool FourierExpansion::is_zero() const { return coeffs_.empty(); }

void FourierExpansion::check_binary_compat(const FourierExpansion& o) const {
  if (genus_ != o.genus_) throw ArgumentError("genus mismatch");
  if (scale_ != o.scale_) throw ArgumentError("exponent scale mismatch");
}

FourierExpansion FourierExpansion::add(const FourierExpansion& o) const {
  check_binary_compat(o);
  if (weight_ != o.weight_) throw ArgumentError("weight mismatch in sum");
  long bound = std::min(trace_bound_, o.trace_bound_);
  FourierExpansion out(genus_, weight_, scale_, bound);
  long sb = out.scaled_trace_bound();
  for (const auto& [k, v] : coeffs_) {
    if (key_trace(k, genus_) <= sb) out.coeffs_[k] = v;
  }
  for (const auto& [k, v] : o.coeffs_) {
    if (key_trace(k, genus_) > sb) continue;
    Q s = out.get(k) + v;
    if (s == 0) {
      out.coeffs_.erase(k);
    } else {
      out.coeffs_[k] = s;
    }
  }
  return out;
}

FourierExpansion FourierExpansion::scalar_mul(const Q& c) const {
  FourierExpansion out(genus_, weight_, scale_, trace_bound_);
  if (c == 0) return out;
  for (const auto& [k, v] : coeffs_) out.coeffs_[k] = c * v;
  return out;
}

FourierExpansion FourierExpansion::multiply_reference(
    const FourierExpansion& o) const {
  check_binary_compat(o);
  long bound = std::min(trace_bound_, o.trace_bound_);
  FourierExpansion out(genus_, weight_ + o.weight_, scale_, bound);
  long sb = out.scaled_trace_bound();
  for (const auto& [k1, v1] : coeffs_) {
    long t1 = key_trace(k1, genus_);
    for (const auto& [k2, v2] : o.coeffs_) {
      if (t1 + key_trace(k2, genus_) > sb) continue;
      FKey k = key_add(k1, k2);
      Q s = out.get(k) + v1 * v2;
      if (s == 0) {
        out.coeffs_.erase(k);
      } else {
        out.coeffs_[k] = s;
      }
    }
  }
  return out;
}

FourierExpansion FourierExpansion::multiply_flat_g2(const FourierExpansion& o,
                                                    long out_bound,
                                                    bool parallel) const {
  const long sb = scale_ * out_bound;
  const long hb = sb / 2;
  const long bdim = 2 * hb + 1;
  auto pack = [&](long a, long c, long b) {
    return (a * (sb + 1) + c) * bdim + (b + hb);
  };

  auto load = [&](const std::map<FKey, Q>& m) {
    std::vector<FlatItem> items;
    items.reserve(m.size());
    for (const auto& [k, q] : m) {
      if (key_trace(k, 2) > sb) continue;
      items.push_back({k.v[0], k.v[1], k.v[2], q.get_num().get_si()});
    }
    return items;
  };
  std::vector<FlatItem> ia = load(coeffs_);
  std::vector<FlatItem> ib = load(o.coeffs_);

  // Group boundaries by the leading diagonal entry; map order sorts on it.
  auto group = [&](const std::vector<FlatItem>& items) {
    std::vector<std::pair<size_t, size_t>> by_a(sb + 1, {0, 0});
    size_t i = 0;
    while (i < items.size()) {
      size_t j = i;
      while (j < items.size() && items[j].a == items[i].a) ++j;
      if (items[i].a <= sb) by_a[items[i].a] = {i, j};
      i = j;
    }
    return by_a;
  };
  auto ga = group(ia);
  auto gb = group(ib);

  std::vector<__int128> slots(static_cast<size_t>(sb + 1) * (sb + 1) * bdim, 0);
  std::atomic<bool> overflow{false};

  int workers = parallel ? worker_count() : 1;
  long block = std::max<long>(1, (sb + 1) / (8 * workers));
  long nblocks = (sb + 1 + block - 1) / block;

#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (long bi = 0; bi < nblocks; ++bi) {
    if (overflow.load(std::memory_order_relaxed)) continue;
    long alo = bi * block;
    long ahi = std::min(sb, alo + block - 1);
    for (long a1 = 0; a1 <= ahi; ++a1) {
      auto [s1, e1] = ga[a1];
      if (s1 == e1) continue;
      long lo2 = std::max<long>(0, alo - a1);
      long hi2 = ahi - a1;
      for (long a2 = lo2; a2 <= hi2; ++a2) {
        auto [s2, e2] = gb[a2];
        if (s2 == e2) continue;
        long aout = a1 + a2;
        for (size_t i = s1; i < e1; ++i) {
          const FlatItem& p = ia[i];
          long cmax = sb - aout - p.c;
          for (size_t j = s2; j < e2; ++j) {
            const FlatItem& q = ib[j];
            if (q.c > cmax) continue;
            __int128 prod = static_cast<__int128>(p.v) * q.v;
            __int128& slot = slots[pack(aout, p.c + q.c, p.b + q.b)];
            if (__builtin_add_overflow(slot, prod, &slot)) {
              overflow.store(true, std::memory_order_relaxed);
              goto block_done;
            }
          }
        }
      }
    }
  block_done:;
  }

  if (overflow.load()) return multiply_reference(o);

  FourierExpansion out(genus_, weight_ + o.weight_, scale_, out_bound);
  for (long a = 0; a <= sb; ++a) {
    for (long c = 0; c + a <= sb; ++c) {
      for (long b = -hb; b <= hb; ++b) {
        __int128 v = slots[pack(a, c, b)];
        if (v == 0) continue;
        FKey k;
        k.v[0] = a;
        k.v[1] = b;
        k.v[2] = c;
        out.coeffs_[k] = q_from_int128(v);
      }
    }
  }
  return out;
}

FourierExpansion FourierExpansion::multiply(const FourierExpansion& o,
                                            bool parallel) const {
  check_binary_compat(o);
  long bound = std::min(trace_bound_, o.trace_bound_);
  if (genus_ == 2 && flat_eligible(coeffs_) && flat_eligible(o.coeffs_)) {
    long sb = scale_ * bound;
    size_t slot_count = static_cast<size_t>(sb + 1) * (sb + 1) * (sb / 2 * 2 + 1);
    if (slot_count <= (size_t(1) << 26)) {
      return multiply_flat_g2(o, bound, parallel);
    }
  }
  return multiply_reference(o);
}

FourierExpansion FourierExpansion::rescaled_to_unit() const {
  if (scale_ == 1) return *this;
  FourierExpansion out(genus_, weight_, 1, trace_bound_);
  for (const auto& [k, v] : coeffs_) {
    FKey nk;
    for (int i = 0; i < key_length(genus_); ++i) {
      if (k.v[i] % scale_ != 0) {
        throw InconsistencyError("index is not on the integral grid");
      }
      nk.v[i] = k.v[i] / scale_;
    }
    out.set(nk, v);
  }
  return out;
}

bool FourierExpansion::is_cuspidal_support() const {
  for (const auto& [k, v] : coeffs_) {
    if (!key_is_pd(k, genus_)) return false;
  }
  return true;
}

bool FourierExpansion::is_singular_support() const {
  for (const auto& [k, v] : coeffs_) {
    ZMat m = key_to_mat(k, genus_);
    if (m.det() != 0) return false;
  }
  return true;
}

bool FourierExpansion::gl_coefficient_invariance(int sup) const {
  const auto& ball = unimodular_group_ball(genus_, sup);
  long sb = scaled_trace_bound();
  for (const auto& u : ball) {
    ZMat ut = u.transpose();
    for (const auto& [k, v] : coeffs_) {
      ZMat m = ut * key_to_mat(k, genus_) * u;
      FKey nk = key_from_mat(m);
      if (key_trace(nk, genus_) > sb) continue;
      if (get(nk) != v) return false;
    }
  }
  return true;
}

FourierExpansion siegel_phi(const FourierExpansion& f) {
  const int g = f.genus();
  if (g < 1) throw ArgumentError("siegel_phi needs genus at least 1");
  FourierExpansion out(g - 1, f.weight(), f.scale(), f.trace_bound());
  for (const auto& [k, v] : f.coeffs()) {
    ZMat m = key_to_mat(k, g);
    bool border_zero = true;
    for (int i = 0; i < g && border_zero; ++i) {
      if (m.at(i, g - 1) != 0) border_zero = false;
    }
    if (!border_zero) continue;
    ZMat top(g - 1, g - 1);
    for (int i = 0; i + 1 < g; ++i) {
      for (int j = 0; j + 1 < g; ++j) top.at(i, j) = m.at(i, j);
    }
    FKey nk = key_from_mat(top);
    Q s = out.get(nk) + v;
    out.set(nk, s);
  }
  return out;
}

std::vector<FKey> even_psd_keys(int genus, long trace_bound) {
  if (genus < 1 || genus > 2)
    throw ArgumentError("even index enumeration covers genus 1 and 2 only");
  std::vector<FKey> out;
  if (genus == 1) {
    for (long a = 0; a <= trace_bound; a += 2) {
      FKey k;
      k.v[0] = a;
      out.push_back(k);
    }
    return out;
  }
  for (long a = 0; a <= trace_bound; a += 2)
    for (long c = 0; a + c <= trace_bound; c += 2) {
      long bmax = 0;
      while ((bmax + 1) * (bmax + 1) <= a * c) ++bmax;
      for (long b = -bmax; b <= bmax; ++b) {
        FKey k;
        k.v[0] = a;
        k.v[1] = b;
        k.v[2] = c;
        out.push_back(k);
      }
    }
  return out;
}

const std::vector<ZMat>& unimodular_group_ball(int genus, int sup) {
  static std::map<std::pair<int, int>, std::vector<ZMat>> cache;
  auto it = cache.find({genus, sup});
  if (it != cache.end()) return it->second;

  std::vector<ZMat> out;
  const int cells = genus * genus;
  std::vector<long> e(cells, -sup);
  while (true) {
    ZMat u(genus, genus);
    for (int i = 0; i < cells; ++i) u.at(i / genus, i % genus) = e[i];
    Z d = u.det();
    if (d == 1 || d == -1) out.push_back(u);
    int pos = 0;
    while (pos < cells && e[pos] == sup) e[pos++] = -sup;
    if (pos == cells) break;
    ++e[pos];
  }
  return cache.emplace(std::make_pair(genus, sup), std::move(out))
      .first->second;
}

}  // namespace sgl
