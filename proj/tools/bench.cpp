#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "fourier.hpp"
#include "geometry.hpp"
#include "jacobi.hpp"
#include "lattice.hpp"
#include "reduction.hpp"
#include "theta.hpp"

using namespace sgl;

namespace {

double time_ms(const std::function<void()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

void row(const std::string& name, double serial, double parallel,
         bool equal) {
  std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   %s\n", name.c_str(),
              serial, parallel, parallel > 0 ? serial / parallel : 0.0,
              equal ? "match" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", omp_get_max_threads());
  std::printf("%-28s %13s %13s %8s\n", "kernel", "serial", "parallel",
              "speedup");

  {
    FourierExpansion a = chi10(20);
    FourierExpansion sq_ref = a;
    FourierExpansion sq_par = a;
    double ts = time_ms([&] { sq_ref = a.multiply_reference(a); });
    double tp = time_ms([&] { sq_par = a.multiply(a, true); });
    row("expansion product", ts, tp, sq_ref.coeffs() == sq_par.coeffs());
  }

  {
    EvenLattice l = lattice_e8e8();
    std::vector<std::vector<long>> vs, vp;
    double ts = time_ms([&] { vs = short_vectors(l, 6, false); });
    double tp = time_ms([&] { vp = short_vectors(l, 6, true); });
    row("lattice vectors", ts, tp, vs.size() == vp.size());
  }

  {
    FourierExpansion ts_out(2, Q(8), 1, 0), tp_out(2, Q(8), 1, 0);
    EvenLattice l = lattice_e8e8();
    double ts = time_ms([&] { ts_out = theta_expansion(l, 2, 4, false); });
    double tp = time_ms([&] { tp_out = theta_expansion(l, 2, 4, true); });
    row("genus 2 theta", ts, tp, ts_out.coeffs() == tp_out.coeffs());
  }

  {
    double vs = 0, vp = 0;
    double ts = time_ms([&] { vs = mc_volume_f1(400000, 7, false); });
    double tp = time_ms([&] { vp = mc_volume_f1(400000, 7, true); });
    row("monte-carlo volume", ts, tp, vs == vp);
  }

  {
    FourierExpansion f = chi10(20);
    JacobiFormExpansion phi = fourier_jacobi(f, 1);
    FourierExpansion ls(2, Q(10), 1, 0), lp(2, Q(10), 1, 0);
    double ts = time_ms([&] { ls = maass_lift(phi, 12, false); });
    double tp = time_ms([&] { lp = maass_lift(phi, 12, true); });
    row("arithmetic lift", ts, tp, ls.coeffs() == lp.coeffs());
  }

  {
    CMat omega(1, 1);
    omega(0, 0) = std::complex<double>(0.3, 1.7);
    TorusCharIndex i1{{1}, {0}};
    TorusCharIndex i2{{2}, {3}};
    std::complex<double> s, pval;
    double ts = time_ms(
        [&] { s = torus_inner_product(omega, i1, i2, 192, false, false); });
    double tp = time_ms(
        [&] { pval = torus_inner_product(omega, i1, i2, 192, false, true); });
    row("torus quadrature", ts, tp, s == pval);
  }

  return 0;
}
