#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace sgl {

using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;

// Every floating-point cutoff used by this module, kept in one place so the
// numeric behaviour is reproducible.
struct NumericTolerances {
  double symmetry = 1e-12;         // absolute defect allowed in symmetric input
  double min_eigenvalue = 1e-10;   // positive definiteness margin
  double cayley_roundtrip = 1e-10; // cayley_inv(cayley(w)) deviation
  double invariance_rel = 1e-9;    // relative defect in group invariance audits
  double distance_rel = 1e-10;     // relative defect in closed-form distances
  double orthonormality = 1e-6;    // quadrature inner products at grid 64
  double fd_step = 1e-6;           // finite difference step
  double fd_rel = 1e-5;            // finite difference relative defect
  double poly_audit = 1e-10;       // invariant polynomial identities
  double riemann = 1e-10;          // period relation residual and positivity
};
const NumericTolerances& tolerances();

struct TangentVector {
  CMat base;
  CMat dir;
};

struct TorusCharIndex {
  std::vector<long> a;
  std::vector<long> b;
};

bool in_siegel_space(const CMat& omega);
bool in_disk_domain(const CMat& w);

// sigma(Y^{-1} v Y^{-1} conj(w)) at the shared base point with Y its
// imaginary part.
std::complex<double> metric_eval(const TangentVector& v,
                                 const TangentVector& w);

// (A omega + B)(C omega + D)^{-1} for a real symplectic block matrix.
CMat siegel_act(const RMat& m, const CMat& omega);

// Differential of siegel_act: carries base and direction together.
TangentVector pushforward(const RMat& m, const TangentVector& v);

// (det Im omega)^{-(g+1)}, the invariant volume density.
double volume_density(const CMat& omega);

// i(I + W)(I - W)^{-1} from the bounded domain to the upper half space, and
// its inverse.
CMat cayley(const CMat& w);
CMat cayley_inv(const CMat& omega);

// Action on the bounded domain conjugate to siegel_act under cayley.
CMat disk_act(const RMat& m, const CMat& w);

CMat cross_ratio(const CMat& om1, const CMat& om0);
std::vector<double> cross_ratio_eigenvalues(const CMat& om1, const CMat& om0);
double geodesic_distance(const CMat& om0, const CMat& om1);

// trace((Z conj(Z))^j) for symmetric Z.
double invariant_poly(int j, const CMat& z);

// Both period relations of (I, omega) against the standard alternating form.
bool riemann_conditions(const CMat& omega);

// Character value at Z, and the quadrature pairing of two characters over
// the fundamental cell of the lattice Z^g + Z^g omega.
std::complex<double> torus_char(const CMat& omega, const TorusCharIndex& idx,
                                const CVec& z);
std::complex<double> torus_inner_product(const CMat& omega,
                                         const TorusCharIndex& i1,
                                         const TorusCharIndex& i2, int grid_n,
                                         bool allow_large = false,
                                         bool parallel = true);

// Reproducible random points and group elements for the invariance audits.
struct NumericSampler {
  explicit NumericSampler(unsigned long seed) : rng(seed) {}

  RMat sample(int genus);
  CMat sample_point(int genus);
  CMat sample_tangent(int genus);
  CMat sample_disk(int genus);

  std::mt19937_64 rng;
};

}  // namespace sgl
