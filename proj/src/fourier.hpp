#pragma once

#include <array>
#include <map>
#include <vector>

#include "qmat.hpp"

namespace sgl {

// Upper triangle of a symmetric integer index matrix, row by row.
// Genus <= 3, so at most 6 entries; unused slots stay zero.
struct FKey {
  std::array<long, 6> v{};
  bool operator==(const FKey&) const = default;
  bool operator<(const FKey& o) const { return v < o.v; }
};

int key_length(int genus);
FKey key_from_mat(const ZMat& k);
ZMat key_to_mat(const FKey& k, int genus);
long key_trace(const FKey& k, int genus);
bool key_is_psd(const FKey& k, int genus);
bool key_is_pd(const FKey& k, int genus);

// Truncated expansion sum_T a(T) e^{2 pi i tr(T Omega)}.  Stored indices are
// K = scale * 2T, so scale 1 keeps the classical even matrices 2T and scale 4
// admits the quarter-integral indices of theta constants (odd diagonals
// included).  Truncation keeps exactly the keys with tr(2T) <= trace bound.
class FourierExpansion {
 public:
  FourierExpansion(int genus, Q weight, int scale, long trace_bound);

  int genus() const { return genus_; }
  const Q& weight() const { return weight_; }
  int scale() const { return scale_; }
  long trace_bound() const { return trace_bound_; }
  long scaled_trace_bound() const { return scale_ * trace_bound_; }
  const std::map<FKey, Q>& coeffs() const { return coeffs_; }

  void set(const FKey& key, const Q& value);
  Q get(const FKey& key) const;
  bool is_zero() const;

  FourierExpansion add(const FourierExpansion& o) const;
  FourierExpansion scalar_mul(const Q& c) const;
  FourierExpansion multiply(const FourierExpansion& o, bool parallel = true) const;
  // Plain map convolution, always serial; the benchmark baseline.
  FourierExpansion multiply_reference(const FourierExpansion& o) const;

  // Divides every stored index by the scale; all of them must land exactly on
  // the scale-1 grid or this throws.
  FourierExpansion rescaled_to_unit() const;

  bool is_cuspidal_support() const;
  bool is_singular_support() const;

  // a(U^T T U) == a(T) for every unimodular U with entries bounded by sup,
  // whenever both indices are inside the truncation.
  bool gl_coefficient_invariance(int sup = 1) const;

 private:
  void check_binary_compat(const FourierExpansion& o) const;
  FourierExpansion multiply_flat_g2(const FourierExpansion& o, long out_bound,
                                    bool parallel) const;

  int genus_;
  Q weight_;
  int scale_;
  long trace_bound_;
  std::map<FKey, Q> coeffs_;
};

// Maps a genus g expansion to genus g-1 by keeping the indices whose last row
// and column vanish.
FourierExpansion siegel_phi(const FourierExpansion& f);

// Every even positive semidefinite index with trace at most the bound, in a
// fixed deterministic order (genus 1 and 2).
std::vector<FKey> even_psd_keys(int genus, long trace_bound);

// All unimodular matrices with entries bounded by sup (cached for small g).
const std::vector<ZMat>& unimodular_group_ball(int genus, int sup);

}  // namespace sgl
