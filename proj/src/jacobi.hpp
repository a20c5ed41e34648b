#pragma once

#include <map>
#include <utility>
#include <vector>

#include "fourier.hpp"
#include "qmat.hpp"

namespace sgl {

// Degree 1 Jacobi form of weight k and index m, stored by (n, r) with
// 4nm - r^2 >= 0 and n up to nbound.  Coefficients depend only on the pair
// (4nm - r^2, r mod 2m); validate() enforces that.
struct JacobiFormExpansion {
  Q weight;
  long index = 1;
  long nbound = 0;
  std::map<std::pair<long, long>, Q> coeffs;

  void set(long n, long r, const Q& value);
  Q get(long n, long r) const;
  bool is_zero() const;
  void validate() const;
};

// Coefficients of e^{2 pi i m tau'} in a genus 2 expansion.
JacobiFormExpansion fourier_jacobi(const FourierExpansion& f, long m);

// Component series f_gamma indexed by discriminant D = 4nm - r^2, one for
// each residue gamma = r mod 2m.
std::vector<std::map<long, Q>> theta_decompose(const JacobiFormExpansion& phi);
JacobiFormExpansion theta_reconstruct(
    const std::vector<std::map<long, Q>>& components, const Q& weight,
    long index, long nbound);

struct HalfIntegralWeightExpansion {
  Q weight;  // k - 1/2
  long nbound = 0;
  std::map<long, Q> coeffs;

  Q get(long n) const;
};

// Index 1 coefficients reindexed by the discriminant N = 4n - r^2; the
// support lands on N = 0, 3 mod 4.
HalfIntegralWeightExpansion kohnen_plus(const JacobiFormExpansion& phi);

// Index raising: (V_m phi)(n, r) = sum over d | (n, r, m) of
// d^{k-1} phi(nm/d^2, r/d).  nbound < 0 keeps everything the input affords.
JacobiFormExpansion v_operator(const JacobiFormExpansion& phi, long m,
                               long nbound = -1);

// Assembles the V_m layers of a cuspidal index 1 form into a genus 2
// expansion with the given trace bound.
FourierExpansion maass_lift(const JacobiFormExpansion& phi, long bound,
                            bool parallel = true);

// Divisor relation a(n, r, m) == sum over d | (n, r, m) of
// d^{k-1} a(nm/d^2, r/d, 1), checked at every index whose references are
// inside the truncation.
bool is_maass_space(const FourierExpansion& f);

}  // namespace sgl
