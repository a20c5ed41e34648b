#pragma once

// Classical genus 1 q-expansions built from first principles, used as
// independent inputs for the operator tests: the weight 12 cusp form via the
// 24th power of the Euler product and level one Eisenstein series via
// divisor power sums.

#include <vector>

#include "fourier.hpp"
#include "reduction.hpp"

namespace qs {

// Coefficients of prod_{n>=1} (1 - q^n) up to q^nmax (pentagonal sparsity).
inline std::vector<sgl::Z> euler_product(long nmax) {
  std::vector<sgl::Z> phi(nmax + 1, sgl::Z(0));
  phi[0] = 1;
  for (long j = 1;; ++j) {
    long g1 = j * (3 * j - 1) / 2;
    long g2 = j * (3 * j + 1) / 2;
    if (g1 > nmax) break;
    sgl::Z s = (j % 2 == 1) ? -1 : 1;
    phi[g1] += s;
    if (g2 <= nmax) phi[g2] += s;
  }
  return phi;
}

inline std::vector<sgl::Z> series_mul(const std::vector<sgl::Z>& a,
                                      const std::vector<sgl::Z>& b,
                                      long nmax) {
  std::vector<sgl::Z> out(nmax + 1, sgl::Z(0));
  for (long i = 0; i <= nmax; ++i) {
    if (a[i] == 0) continue;
    for (long j = 0; i + j <= nmax; ++j) {
      if (b[j] == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

// q prod (1-q^n)^24, normalized leading coefficient 1.
inline sgl::FourierExpansion delta_form(long nmax) {
  auto phi = euler_product(nmax);
  std::vector<sgl::Z> pw(nmax + 1, sgl::Z(0));
  pw[0] = 1;
  for (int t = 0; t < 24; ++t) pw = series_mul(pw, phi, nmax);
  sgl::FourierExpansion f(1, sgl::Q(12), 1, 2 * nmax);
  for (long n = 1; n <= nmax; ++n) {
    if (pw[n - 1] == 0) continue;
    sgl::FKey key;
    key.v[0] = 2 * n;
    f.set(key, sgl::Q(pw[n - 1]));
  }
  return f;
}

// 1 - (2k / B_k) sum_n sigma_{k-1}(n) q^n for even weight k.
inline sgl::FourierExpansion eisenstein_g1(long weight, long nmax) {
  sgl::Q factor = sgl::Q(-2 * weight) / sgl::bernoulli_number(weight);
  factor.canonicalize();
  sgl::FourierExpansion f(1, sgl::Q(weight), 1, 2 * nmax);
  sgl::FKey zero;
  f.set(zero, sgl::Q(1));
  for (long n = 1; n <= nmax; ++n) {
    sgl::Z sig = 0;
    for (long d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      sgl::Z t;
      mpz_pow_ui(t.get_mpz_t(), sgl::Z(d).get_mpz_t(),
                 static_cast<unsigned long>(weight - 1));
      sig += t;
    }
    sgl::FKey key;
    key.v[0] = 2 * n;
    f.set(key, factor * sgl::Q(sig));
  }
  return f;
}

}  // namespace qs
