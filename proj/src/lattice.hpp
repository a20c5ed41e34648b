#pragma once

#include <string>
#include <vector>

#include "exactmat.hpp"

namespace sgl {

struct EvenLattice {
  std::string name;
  int rank = 0;
  ZMat gram;
  bool unimodular = false;
};

const EvenLattice& lattice_e8();
const EvenLattice& lattice_d16plus();
const EvenLattice& lattice_e8e8();

// All integer vectors v with v gram v^T <= max_norm, each exactly once,
// in a fixed deterministic order.
std::vector<std::vector<long>> short_vectors(const EvenLattice& l,
                                             long max_norm,
                                             bool parallel = false);

// counts[q] = number of vectors of norm exactly q, for q <= max_norm,
// without materializing the vectors.
std::vector<long> norm_histogram(const EvenLattice& l, long max_norm);

// A(S, T): number of integral rank x n matrices G with G^T S G == T.
// n == 3 is expensive and must be opted into.
long rep_number(const EvenLattice& s, const ZMat& t, bool allow_n3 = false,
                bool parallel = true);

}  // namespace sgl
