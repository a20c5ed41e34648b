#include "theta.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace sgl {

namespace {

// Sum over w = 2m + eps' of i^{w . eps''} q^{w w^T / 8}, with w and -w folded
// together; the fold keeps the leading nonzero entry positive and doubles the
// contribution, which turns the Gaussian phases into plain signs.
void fold_characteristic_vectors(const ThetaCharacteristic& ch, long norm_cap,
                                 FourierExpansion& out) {
  const int g = ch.genus();
  std::vector<long> v(g, 0);

  auto phase_sign = [&]() {
    long t = 0;
    for (int i = 0; i < g; ++i) t += v[i] * ch.lower[i];
    return (((t % 4) + 4) % 4 == 0) ? 1 : -1;
  };

  auto emit = [&](long mult) {
    ZMat k(g, g);
    for (int i = 0; i < g; ++i) {
      for (int j = 0; j < g; ++j) k.at(i, j) = v[i] * v[j];
    }
    out.set(key_from_mat(k), Q(mult * phase_sign()));
  };

  auto rec = [&](auto&& self, int idx, long norm, bool all_zero) -> void {
    if (idx == g) {
      emit(all_zero ? 1 : 2);
      return;
    }
    long rem = norm_cap - norm;
    long r = static_cast<long>(std::sqrt(static_cast<double>(rem)));
    while ((r + 1) * (r + 1) <= rem) ++r;
    while (r > 0 && r * r > rem) --r;
    long lo = all_zero ? 0 : -r;
    while (((lo % 2) + 2) % 2 != ch.upper[idx]) ++lo;
    for (long x = lo; x <= r; x += 2) {
      v[idx] = x;
      self(self, idx + 1, norm + x * x, all_zero && x == 0);
    }
    v[idx] = 0;
  };
  rec(rec, 0, 0, true);
}

}  // namespace

bool ThetaCharacteristic::is_even() const {
  long t = 0;
  for (size_t i = 0; i < upper.size(); ++i) t += upper[i] * lower[i];
  return t % 2 == 0;
}

std::vector<ThetaCharacteristic> even_characteristics(int genus) {
  if (genus < 1 || genus > 3) throw ArgumentError("genus must be 1, 2, or 3");
  std::vector<ThetaCharacteristic> out;
  for (int a = 0; a < (1 << genus); ++a) {
    for (int b = 0; b < (1 << genus); ++b) {
      ThetaCharacteristic ch;
      ch.upper.resize(genus);
      ch.lower.resize(genus);
      for (int i = 0; i < genus; ++i) {
        ch.upper[i] = (a >> (genus - 1 - i)) & 1;
        ch.lower[i] = (b >> (genus - 1 - i)) & 1;
      }
      if (ch.is_even()) out.push_back(std::move(ch));
    }
  }
  return out;
}

FourierExpansion theta_expansion(const EvenLattice& s, int genus, long bound,
                                 bool parallel) {
  if (genus < 1 || genus > 2) throw ArgumentError("theta_expansion: genus must be 1 or 2");
  if (bound < 0) throw ArgumentError("theta_expansion: negative bound");
  Q weight(s.rank, 2);
  weight.canonicalize();
  FourierExpansion out(genus, weight, 1, bound);

  if (genus == 1) {
    auto hist = norm_histogram(s, bound);
    for (long a = 0; a <= bound; a += 2) {
      FKey k;
      k.v[0] = a;
      out.set(k, Q(hist[a]));
    }
    return out;
  }

  const int n = s.rank;
  std::vector<long> gram(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) gram[i * n + j] = s.gram.at(i, j).get_si();
  }
  auto vecs = short_vectors(s, bound, parallel);
  std::vector<std::vector<std::vector<long>>> by_norm(bound + 1);
  for (auto& v : vecs) {
    long q = 0;
    for (int i = 0; i < n; ++i) {
      long row = 0;
      for (int j = 0; j < n; ++j) row += gram[i * n + j] * v[j];
      q += v[i] * row;
    }
    if (q <= bound) by_norm[q].push_back(std::move(v));
  }

  // gram * w for a whole norm class, so each (v, w) pair costs one dot product.
  auto images = [&](long c) {
    std::vector<std::vector<long>> gw;
    gw.reserve(by_norm[c].size());
    for (const auto& w : by_norm[c]) {
      std::vector<long> img(n, 0);
      for (int i = 0; i < n; ++i) {
        long acc = 0;
        for (int j = 0; j < n; ++j) acc += gram[i * n + j] * w[j];
        img[i] = acc;
      }
      gw.push_back(std::move(img));
    }
    return gw;
  };

  for (long c = 0; c <= bound; c += 2) {
    auto gw = images(c);
    for (long a = 0; a <= c && a + c <= bound; a += 2) {
      std::map<long, long> pair_hist;
      for (const auto& v : by_norm[a]) {
        for (const auto& img : gw) {
          long b = 0;
          for (int i = 0; i < n; ++i) b += v[i] * img[i];
          ++pair_hist[b];
        }
      }
      for (const auto& [b, cnt] : pair_hist) {
        FKey k;
        k.v[0] = a;
        k.v[1] = b;
        k.v[2] = c;
        out.set(k, Q(cnt));
        FKey kt;
        kt.v[0] = c;
        kt.v[1] = b;
        kt.v[2] = a;
        out.set(kt, Q(cnt));
      }
    }
  }
  return out;
}

FourierExpansion theta_constant(const ThetaCharacteristic& ch, long bound) {
  const int g = ch.genus();
  if (g < 1 || g > 3) throw ArgumentError("theta_constant: genus must be 1, 2, or 3");
  if (bound < 0) throw ArgumentError("theta_constant: negative bound");
  FourierExpansion out(g, Q(1, 2), 4, bound);
  if (!ch.is_even()) return out;
  fold_characteristic_vectors(ch, 4 * bound, out);
  return out;
}

FourierExpansion chi10(long bound, bool parallel) {
  if (bound < 2) throw ArgumentError("chi10: bound must be at least 2");
  auto evens = even_characteristics(2);
  FourierExpansion acc = theta_constant(evens[0], bound);
  acc = acc.multiply(theta_constant(evens[0], bound), parallel);
  for (size_t i = 1; i < evens.size(); ++i) {
    FourierExpansion th = theta_constant(evens[i], bound);
    acc = acc.multiply(th, parallel);
    acc = acc.multiply(th, parallel);
  }
  acc = acc.scalar_mul(Q(-1, 16384));
  return acc.rescaled_to_unit();
}

FourierExpansion cusp_product_g3(long bound) {
  if (bound < 0 || bound > 4) {
    throw ArgumentError("cusp_product_g3: bound must be between 0 and 4");
  }
  auto evens = even_characteristics(3);
  FourierExpansion acc = theta_constant(evens[0], bound);
  for (size_t i = 1; i < evens.size(); ++i) {
    acc = acc.multiply(theta_constant(evens[i], bound), false);
  }
  return acc.rescaled_to_unit();
}

FourierExpansion cusp_product_g3_minimal_layer() {
  auto evens = even_characteristics(3);
  // Each factor keeps only its minimal-norm vectors, which is exact on the
  // lowest trace stratum of the product.
  auto minimal_factor = [](const ThetaCharacteristic& ch) {
    FourierExpansion f(3, Q(1, 2), 4, 12);
    std::vector<long> w(3, 0);
    std::vector<int> free_idx;
    for (int i = 0; i < 3; ++i) {
      if (ch.upper[i] == 1) free_idx.push_back(i);
    }
    int nfree = static_cast<int>(free_idx.size());
    if (nfree == 0) {
      f.set(FKey{}, Q(1));
      return f;
    }
    // Fold +-w: fix the first free coordinate to +1.
    for (int mask = 0; mask < (1 << (nfree - 1)); ++mask) {
      w[free_idx[0]] = 1;
      for (int t = 1; t < nfree; ++t) {
        w[free_idx[t]] = (mask >> (t - 1)) & 1 ? -1 : 1;
      }
      long dot = 0;
      for (int i = 0; i < 3; ++i) dot += w[i] * ch.lower[i];
      long sign = (((dot % 4) + 4) % 4 == 0) ? 2 : -2;
      ZMat k(3, 3);
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) k.at(i, j) = w[i] * w[j];
      }
      FKey key = key_from_mat(k);
      f.set(key, f.get(key) + Q(sign));
      std::fill(w.begin(), w.end(), 0);
    }
    return f;
  };

  FourierExpansion acc = minimal_factor(evens[0]);
  for (size_t i = 1; i < evens.size(); ++i) {
    acc = acc.multiply_reference(minimal_factor(evens[i]));
  }
  return acc.rescaled_to_unit();
}

FourierExpansion eisenstein_witt(int weight, int genus, long bound,
                                 bool parallel) {
  if (weight != 4) {
    throw ArgumentError("eisenstein_witt: only weight 4 has a one-class genus");
  }
  return theta_expansion(lattice_e8(), genus, bound, parallel);
}

}  // namespace sgl
