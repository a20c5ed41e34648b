#pragma once

#include <vector>

#include "hecke.hpp"

namespace sgl {

// Inverse local factor L_p(t)^{-1}, a polynomial in t = p^{-s} with constant
// term 1.
struct EulerFactor {
  long p = 2;
  std::vector<Q> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Q coeff(int i) const;
  bool operator==(const EulerFactor&) const = default;
  EulerFactor multiply(const EulerFactor& o) const;
};

// Degree 2^g polynomial whose roots are the products of similitude
// parameters: alpha_0 prod alpha_nu over subsets.
EulerFactor spinor_factor(const SatakeData& sd);

// Degree 2g + 1 polynomial with the root 1 and the pairs alpha_nu^{+-1}.
EulerFactor standard_factor(const SatakeData& sd);

}  // namespace sgl
