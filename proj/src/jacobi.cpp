#include "jacobi.hpp"

#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace sgl {

namespace {

long isqrt_floor(long n) {
  long s = 0;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

Q pow_signed(long base, long e) {
  Z b(base);
  Z num;
  mpz_pow_ui(num.get_mpz_t(), b.get_mpz_t(), e < 0 ? -e : e);
  if (e >= 0) return Q(num);
  Q out(1, num);
  out.canonicalize();
  return out;
}

long residue(long r, long mod) { return ((r % mod) + mod) % mod; }

// Walks every admissible pair (n, r) with n <= nbound and 4nm >= r^2.
template <typename F>
void for_each_pair(long nbound, long m, F&& body) {
  for (long n = 0; n <= nbound; ++n) {
    long rmax = isqrt_floor(4 * n * m);
    for (long r = -rmax; r <= rmax; ++r) body(n, r);
  }
}

long integer_weight(const Q& weight, const char* who) {
  if (weight.get_den() != 1) {
    throw ArgumentError(std::string(who) + " needs an integer weight");
  }
  return weight.get_num().get_si();
}

}  // namespace

void JacobiFormExpansion::set(long n, long r, const Q& value) {
  if (n < 0) throw ArgumentError("coefficient row must be nonnegative");
  if (n > nbound) throw ArgumentError("coefficient row exceeds the truncation bound");
  if (4 * n * index - r * r < 0) {
    throw ArgumentError("coefficient pair lies outside the cone 4nm >= r^2");
  }
  if (value == 0) {
    coeffs.erase({n, r});
  } else {
    coeffs[{n, r}] = value;
  }
}

Q JacobiFormExpansion::get(long n, long r) const {
  auto it = coeffs.find({n, r});
  return it == coeffs.end() ? Q(0) : it->second;
}

bool JacobiFormExpansion::is_zero() const {
  for (const auto& [nr, v] : coeffs) {
    if (v != 0) return false;
  }
  return true;
}

void JacobiFormExpansion::validate() const {
  if (index < 0) throw InconsistencyError("negative index");
  for (const auto& [nr, v] : coeffs) {
    auto [n, r] = nr;
    if (n < 0 || n > nbound || 4 * n * index - r * r < 0) {
      throw InconsistencyError("stored pair outside the admissible range");
    }
  }
  if (index == 0) return;
  // Coefficients must be constant on the classes (4nm - r^2, r mod 2m);
  // pairs missing from the map count as zero.
  std::map<std::pair<long, long>, std::pair<Q, bool>> classes;
  for_each_pair(nbound, index, [&](long n, long r) {
    long disc = 4 * n * index - r * r;
    long gamma = residue(r, 2 * index);
    Q value = get(n, r);
    auto [it, fresh] = classes.try_emplace({disc, gamma}, value, true);
    if (!fresh && it->second.first != value) {
      std::ostringstream os;
      os << "coefficients split the class 4nm - r^2 = " << disc << ", r = "
         << gamma << " (mod " << 2 * index << ")";
      throw InconsistencyError(os.str());
    }
  });
}

JacobiFormExpansion fourier_jacobi(const FourierExpansion& f, long m) {
  if (f.genus() != 2) {
    throw ArgumentError("Fourier-Jacobi layers need a genus 2 expansion");
  }
  if (f.scale() != 1) {
    throw ArgumentError("Fourier-Jacobi layers need a unit scale expansion");
  }
  if (m < 0) throw ArgumentError("layer index must be nonnegative");
  if (2 * m > f.trace_bound()) {
    std::ostringstream os;
    os << "layer " << m << " starts at trace " << 2 * m
       << ", past the trace bound " << f.trace_bound();
    throw TruncationError(os.str());
  }
  JacobiFormExpansion phi;
  phi.weight = f.weight();
  phi.index = m;
  phi.nbound = f.trace_bound() / 2 - m;
  for_each_pair(phi.nbound, m, [&](long n, long r) {
    FKey key;
    key.v = {2 * n, r, 2 * m, 0, 0, 0};
    phi.set(n, r, f.get(key));
  });
  phi.validate();
  return phi;
}

std::vector<std::map<long, Q>> theta_decompose(const JacobiFormExpansion& phi) {
  if (phi.index < 1) {
    throw ArgumentError("theta decomposition needs a positive index");
  }
  phi.validate();
  std::vector<std::map<long, Q>> components(2 * phi.index);
  for (const auto& [nr, v] : phi.coeffs) {
    if (v == 0) continue;
    auto [n, r] = nr;
    long disc = 4 * n * phi.index - r * r;
    components[residue(r, 2 * phi.index)][disc] = v;
  }
  return components;
}

JacobiFormExpansion theta_reconstruct(
    const std::vector<std::map<long, Q>>& components, const Q& weight,
    long index, long nbound) {
  if (index < 1) {
    throw ArgumentError("theta reconstruction needs a positive index");
  }
  if (components.size() != static_cast<size_t>(2 * index)) {
    throw ArgumentError("component count must be twice the index");
  }
  JacobiFormExpansion phi;
  phi.weight = weight;
  phi.index = index;
  phi.nbound = nbound;
  for_each_pair(nbound, index, [&](long n, long r) {
    const auto& comp = components[residue(r, 2 * index)];
    auto it = comp.find(4 * n * index - r * r);
    if (it != comp.end()) phi.set(n, r, it->second);
  });
  return phi;
}

Q HalfIntegralWeightExpansion::get(long n) const {
  auto it = coeffs.find(n);
  return it == coeffs.end() ? Q(0) : it->second;
}

HalfIntegralWeightExpansion kohnen_plus(const JacobiFormExpansion& phi) {
  if (phi.index != 1) {
    throw ArgumentError("plus space reindexing needs index 1");
  }
  integer_weight(phi.weight, "plus space reindexing");
  phi.validate();
  HalfIntegralWeightExpansion h;
  h.weight = phi.weight - Q(1, 2);
  h.nbound = 4 * phi.nbound;
  for (const auto& [nr, v] : phi.coeffs) {
    if (v == 0) continue;
    auto [n, r] = nr;
    h.coeffs[4 * n - r * r] = v;
  }
  return h;
}

JacobiFormExpansion v_operator(const JacobiFormExpansion& phi, long m,
                               long nbound) {
  if (phi.index != 1) throw ArgumentError("index raising starts from index 1");
  long k = integer_weight(phi.weight, "index raising");
  if (m < 1) throw ArgumentError("index raising needs a positive target index");
  if (nbound < 0) nbound = phi.nbound / m;
  if (m * nbound > phi.nbound) {
    std::ostringstream os;
    os << "raising the index to " << m << " at row " << nbound
       << " needs source rows up to " << m * nbound << " (have " << phi.nbound
       << ")";
    throw TruncationError(os.str());
  }
  JacobiFormExpansion out;
  out.weight = phi.weight;
  out.index = m;
  out.nbound = nbound;
  for_each_pair(nbound, m, [&](long n, long r) {
    long g = std::gcd(std::gcd(n, r), m);
    Q acc(0);
    for (long d = 1; d <= g; ++d) {
      if (g % d != 0) continue;
      acc += pow_signed(d, k - 1) * phi.get(n * m / (d * d), r / d);
    }
    out.set(n, r, acc);
  });
  out.validate();
  return out;
}

FourierExpansion maass_lift(const JacobiFormExpansion& phi, long bound,
                            bool parallel) {
  if (phi.index != 1) throw ArgumentError("the lift starts from index 1");
  integer_weight(phi.weight, "the lift");
  phi.validate();
  for (const auto& [nr, v] : phi.coeffs) {
    auto [n, r] = nr;
    if (4 * n - r * r == 0 && v != 0) {
      throw ArgumentError("the lift needs a cusp form: nonzero singular coefficient");
    }
  }
  long half = bound / 2;
  for (long m = 1; m <= half; ++m) {
    if (m * (half - m) > phi.nbound) {
      std::ostringstream os;
      os << "layer " << m << " needs source rows up to " << m * (half - m)
         << " (have " << phi.nbound << ")";
      throw TruncationError(os.str());
    }
  }
  std::vector<JacobiFormExpansion> layers(half + 1);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long m = 1; m <= half; ++m) {
    layers[m] = v_operator(phi, m, half - m);
  }
  FourierExpansion out(2, phi.weight, 1, bound);
  for (long m = 1; m <= half; ++m) {
    for (const auto& [nr, v] : layers[m].coeffs) {
      FKey key;
      key.v = {2 * nr.first, nr.second, 2 * m, 0, 0, 0};
      out.set(key, v);
    }
  }
  return out;
}

bool is_maass_space(const FourierExpansion& f) {
  if (f.genus() != 2) throw ArgumentError("the divisor relation is a genus 2 test");
  if (f.scale() != 1) throw ArgumentError("the divisor relation needs a unit scale expansion");
  long k = integer_weight(f.weight(), "the divisor relation");
  long bound = f.trace_bound();
  for (const FKey& key : even_psd_keys(2, bound)) {
    long n = key.v[0] / 2;
    long r = key.v[1];
    long m = key.v[2] / 2;
    if (n == 0 && r == 0 && m == 0) continue;
    long g = std::gcd(std::gcd(n, r), m);
    bool checkable = true;
    Q acc(0);
    for (long d = 1; d <= g; ++d) {
      if (g % d != 0) continue;
      FKey ref;
      ref.v = {2 * n * m / (d * d), r / d, 2, 0, 0, 0};
      if (key_trace(ref, 2) > bound) {
        checkable = false;
        break;
      }
      acc += pow_signed(d, k - 1) * f.get(ref);
    }
    if (checkable && f.get(key) != acc) return false;
  }
  return true;
}

}  // namespace sgl
