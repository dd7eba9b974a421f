#pragma once

#include "cpe/laurent.hpp"

namespace cpe {

enum class EnsembleKind {
  Haar,
  Jacobi,
  Gauss,
  Rank1Product,
  Ginibre,
  PhaseShift,
  Inverse,
  Product,
  FixedTimes,
};

enum class HaarVariant { Geometric, Binomial, Custom };

// Tagged description of an ensemble on the unitary group. Composite kinds
// (PhaseShift, Inverse, Product, FixedTimes) reference their factors
// through `inner`.
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::Haar;

  HaarVariant variant = HaarVariant::Geometric;
  LaurentWeight custom;  // Haar with variant == Custom

  double alpha = 0.0;  // Jacobi
  double gamma = 0.0;  // Jacobi
  double t = 0.0;      // Gauss
  double nu = 0.0;     // Ginibre
  std::vector<double> gammas;  // Rank1Product factors

  cplx z0 = cplx(1.0, 0.0);          // PhaseShift rotation
  std::vector<double> fixed_angles;  // FixedTimes conditioning spectrum

  std::vector<EnsembleSpec> inner;
};

EnsembleSpec make_haar(HaarVariant v = HaarVariant::Geometric);
EnsembleSpec make_custom_haar(LaurentWeight w);
EnsembleSpec make_jacobi(double alpha, double gamma);
EnsembleSpec make_gauss(double t);
EnsembleSpec make_rank1(std::vector<double> gammas);
EnsembleSpec make_ginibre(double nu);
EnsembleSpec make_phase_shift(cplx z0, EnsembleSpec inner);
EnsembleSpec make_inverse(EnsembleSpec inner);
EnsembleSpec make_product(std::vector<EnsembleSpec> factors);
EnsembleSpec make_fixed_times(std::vector<double> angles, EnsembleSpec inner);

// Materialize the Laurent coefficients of the spec's circle weight on a
// certified window. Throws for FixedTimes (a conditional ensemble with no
// circle weight of its own). Results are validated and, for the families
// whose raw formulas only satisfy the reality constraint up to a global
// constant (Rank1Product, Ginibre), canonically rescaled.
LaurentWeight resolve_weight(const EnsembleSpec& spec, int N);

// Exact transform value at integer s straight from the family formula,
// using the same canonical scaling as resolve_weight, so the two paths
// agree on the resolved window to rounding.
cplx closed_form_transform(const EnsembleSpec& spec, int N, long s);

// Gauss coefficients exp(-t (s + (1-N)/2)^2) on a window sized so the
// discarded mass is below ~1e-14.
LaurentWeight theta_coeffs(double t, int N);

// Unit-modulus constant c such that the coefficients c * u_s satisfy the
// reality constraint canonically: real positive middle entry for odd N,
// conjugate middle pair with nonnegative real part for even N. Defined for
// families that break reality by a single global constant.
cplx canonical_phase(const LaurentWeight& w);

// Angle density of the nontrivial reflection eigenvalue: the one-factor
// building block places eigenvalue -e^{i theta} with
//   p(theta) = 2^{N-1} |Gamma((N+1)/2 + i gamma)|^2 / (N-1)!
//              * cos^{N-1}(theta/2) * exp(gamma * theta),
// a probability density with respect to d theta / (2 pi) on (-pi, pi).
double rank1_angle_density(int N, double gamma, double theta);

// Closed form of the Jacobi circle weight itself,
//   w(e^{i theta}) = (2 cos(theta/2))^{alpha + N - 1} e^{gamma theta}
//                    e^{i theta (1 - N) / 2},  theta in (-pi, pi).
cplx jacobi_closed_form_value(int N, double alpha, double gamma, double theta);

}  // namespace cpe
