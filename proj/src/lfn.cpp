#include "lfn.hpp"

#include "errors.hpp"

namespace sgl {

Q EulerFactor::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs.size())) return Q(0);
  return coeffs[i];
}

EulerFactor EulerFactor::multiply(const EulerFactor& o) const {
  if (p != o.p) throw ArgumentError("euler factors multiply at one prime");
  EulerFactor out;
  out.p = p;
  if (coeffs.empty() || o.coeffs.empty()) return out;
  out.coeffs.assign(coeffs.size() + o.coeffs.size() - 1, Q(0));
  for (size_t i = 0; i < coeffs.size(); ++i) {
    for (size_t j = 0; j < o.coeffs.size(); ++j) {
      out.coeffs[i + j] += coeffs[i] * o.coeffs[j];
    }
  }
  return out;
}

EulerFactor spinor_factor(const SatakeData& sd) {
  EulerFactor out;
  out.p = sd.p;
  if (sd.genus == 1) {
    out.coeffs = {Q(1), Q(-sd.lambda1), sd.s2e1};
    return out;
  }
  if (sd.genus != 2) throw ArgumentError("spinor factors cover genus 1 and 2");
  if (sd.sigma == 0 || sd.s2e2 == 0) {
    throw ArgumentError("degenerate genus 2 similitude parameters");
  }
  const Q& a = sd.s2e1;
  const Q& pw = sd.s2e2;
  out.coeffs = {Q(1), Q(-sd.lambda1), Q(a + 2 * pw + a * pw / sd.sigma),
                Q(-pw * sd.lambda1), Q(pw * pw)};
  return out;
}

EulerFactor standard_factor(const SatakeData& sd) {
  EulerFactor out;
  out.p = sd.p;
  if (sd.genus == 1) {
    if (sd.s2e1 == 0) throw ArgumentError("degenerate genus 1 similitude parameters");
    Q s1 = sd.lambda1 * sd.lambda1 / sd.s2e1 - 2;
    out.coeffs = {Q(1), Q(-(1 + s1)), Q(1 + s1), Q(-1)};
    return out;
  }
  if (sd.genus != 2) throw ArgumentError("standard factors cover genus 1 and 2");
  if (sd.sigma == 0 || sd.s2e2 == 0) {
    throw ArgumentError("degenerate genus 2 similitude parameters");
  }
  Q e1 = sd.s2e1 / sd.sigma;
  Q e2 = sd.s2e2 / sd.sigma;
  Q u = e1 + e1 / e2;
  Q v = 2 + e2 + (e1 * e1 + 1 - 2 * e2) / e2;
  out.coeffs = {Q(1), Q(-(1 + u)), Q(u + v), Q(-(u + v)), Q(1 + u), Q(-1)};
  return out;
}

}  // namespace sgl
