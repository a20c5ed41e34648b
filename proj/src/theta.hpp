#pragma once

#include <vector>

#include "fourier.hpp"
#include "lattice.hpp"

namespace sgl {

// Characteristic [eps'; eps''] with entries in {0, 1}.
struct ThetaCharacteristic {
  std::vector<int> upper;
  std::vector<int> lower;

  int genus() const { return static_cast<int>(upper.size()); }
  bool is_even() const;
};

std::vector<ThetaCharacteristic> even_characteristics(int genus);

// Theta series of an even unimodular lattice; weight rank/2, unit scale.
FourierExpansion theta_expansion(const EvenLattice& s, int genus, long bound,
                                 bool parallel = true);

// Theta constant theta[eps](Omega); quarter-integral exponents, so scale 4.
// Odd characteristics give the zero expansion.
FourierExpansion theta_constant(const ThetaCharacteristic& ch, long bound);

// Weight 10 cusp form: -2^{-14} times the product of the squares of the ten
// even genus 2 theta constants, brought back to unit scale.
FourierExpansion chi10(long bound, bool parallel = true);

// Product of the 36 even genus 3 theta constants, truncated to tr(2T) <= bound.
// The product starts at trace 12, so small bounds give the zero expansion;
// the bound is capped to keep the full convolution affordable.
FourierExpansion cusp_product_g3(long bound);

// The exact trace 12 stratum of the same product, computed by restricting
// every factor to its minimal-norm terms.
FourierExpansion cusp_product_g3_minimal_layer();

// Genus <= 2 Eisenstein series realized as a theta series; only weight 4 has
// a one-class genus, so that is the only weight accepted.
FourierExpansion eisenstein_witt(int weight, int genus, long bound,
                                 bool parallel = true);

}  // namespace sgl
