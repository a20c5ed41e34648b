#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "exactmat.hpp"

namespace sgl {

struct MinkowskiResult {
  QMat reduced;
  ZMat transform;
  int steps = 0;
};

struct SiegelResult {
  SiegelPoint reduced;
  QMat transform;  // integral symplectic
  int steps = 0;
};

struct ExactVolume {
  Q rational;
  int pi_power = 0;
  double float_value = 0.0;
};

int default_search_bound(int g);

bool is_minkowski_reduced(const QMat& y, int search_bound = 0);
MinkowskiResult minkowski_reduce(const QMat& y);

// Witness list used by the domain membership test: integral symplectic
// matrices with nontrivial lower block, deduplicated by the left-GL class of
// (C D). Cached per genus.
const std::vector<QMat>& siegel_witnesses(int g);

// Left-GL canonical forms of completable lower block pairs (C D) with
// C nonzero and sup-norm <= bound; used to audit witness coverage.
std::vector<ZMat> bottom_pair_classes_up_to(int g, int bound);

bool is_siegel_reduced(const SiegelPoint& om);
SiegelResult siegel_reduce(const SiegelPoint& om);

Q bernoulli_number(int n);
ExactVolume siegel_volume(int g);

// Monte-Carlo estimate of vol(F_1) by rejection sampling rational points
// against is_siegel_reduced; deterministic for fixed seed and worker split.
double mc_volume_f1(std::int64_t samples, std::uint64_t seed,
                    bool parallel = true);

}  // namespace sgl
