#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "fourier.hpp"
#include "qmat.hpp"

namespace sgl {

// Right coset representative (A B; 0 D) with tA.D = l.I and tB.D symmetric.
struct CosetRep {
  ZMat a, b, d;
  long mult = 1;
};

struct HeckeElement {
  int genus = 1;
  long p = 2;
  long l = 2;  // similitude factor, p or a power of it
  std::string label;
  std::vector<CosetRep> cosets;

  long degree() const;
};

// op is "T" for T(p) or "T0".."Tg" for the similitude p^2 pieces.
HeckeElement coset_reps(const std::string& op, long p, int genus);

// The unit of the local algebra: the single coset of the identity.
HeckeElement hecke_identity(int genus, long p);

FourierExpansion hecke_apply_element(const FourierExpansion& f,
                                     const HeckeElement& e);
FourierExpansion hecke_apply(const FourierExpansion& f, const std::string& op,
                             long p);

// Ratio of image to input at the first usable index, verified across the
// whole comparable range.
Q eigenvalue(const FourierExpansion& f, const std::string& op, long p);

// Laurent polynomial in X_0..X_g with rational coefficients; exponents are
// stored as fixed-width arrays (unused slots zero).
struct LaurentPoly {
  int genus = 1;
  std::map<std::array<int, 4>, Q> terms;

  bool operator==(const LaurentPoly&) const = default;
  LaurentPoly multiply(const LaurentPoly& o) const;
};

LaurentPoly satake_Q(const HeckeElement& e);

// x0 -> x0 x_j, x_j -> x_j^{-1}; the generator that, with permutations,
// makes the images of the standard operators invariant.
LaurentPoly weyl_reflect(const LaurentPoly& f, int j);
// Swap X_i and X_j for 1 <= i, j <= genus.
LaurentPoly weyl_swap(const LaurentPoly& f, int i, int j);

// Symmetric s x s matrices over F_p with corank exactly i.
long m_count(int s, int i, long p);

struct SatakeData {
  int genus = 2;
  long p = 2;
  long k = 10;
  Q lambda1;  // alpha_0 (1 + E_1 + E_2), the T(p) eigenvalue
  Q sigma;    // alpha_0^2
  Q s2e1;     // alpha_0^2 E_1
  Q s2e2;     // alpha_0^2 E_2
};

// Genus 2 parameter extraction from the three eigenvalues at p.
std::vector<SatakeData> satake_solve(long k, long p, const Q& lambda_tp,
                                     const Q& lambda_t1, const Q& lambda_t2);

// Genus 1: the pair is pinned by a_p directly.
SatakeData satake_solve_g1(long k, long p, const Q& ap);

HeckeElement hecke_multiply(const HeckeElement& e1, const HeckeElement& e2);

}  // namespace sgl
