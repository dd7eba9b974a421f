#pragma once

#include "cpe/laurent.hpp"
#include "cpe/common.hpp"

namespace cpe {

// Joint eigenvalue density with respect to d theta / (2 pi)^N on the full
// torus (exchangeable; integrates to 1):
//   p(z) = Delta(z) det[(-z_a d/dz_a)^{b-1} w(z_a)]
//          / (N! prod_j j! prod_j Sw(j)).
// Real up to rounding; tiny negative round-off is clamped to 0, anything
// materially negative throws.
double jpdf_polya(const LaurentWeight& w, const EigenAngles& z);

// Density of the spectrum after multiplying a fixed unitary with angles x
// by an independent factor with weight w:
//   p(z | x) = Delta(z) det[w(z_a / x_b)]
//              / (N! prod_j Sw(j) Delta(x)).
// x must have pairwise angle gaps of at least gap_tol.
double jpdf_fixed_product(const LaurentWeight& w, const EigenAngles& z,
                          const EigenAngles& x);

// Normalization of the confluent circle weight with parameters
// (alpha, gamma):
//   (1/(2 pi)^N) int |Delta(e^{i th})|^2 prod_j (2 cos(th_j/2))^alpha
//                e^{gamma th_j} d th
//   = prod_{j=0}^{N-1} Gamma(1+alpha+j) Gamma(j+2)
//     / |Gamma(1+alpha/2+i gamma+j)|^2.
double normalization_CN(int N, double alpha, double gamma);

// k-point correlation function by direct quadrature over the remaining
// N - k angles on a uniform grid (exact once the grid exceeds the
// trigonometric degree of the integrand). Practical for N <= 3.
double brute_force_Rk(const LaurentWeight& w,
                      const std::vector<double>& angles, int grid = 0);

// Closed form of the conjugation average
//   int f(U diag(y)^* U^* diag(x)) dU
//     = det[w(x_a / y_b)] / (prod_j Sw(j) Delta(x^*) Delta(y))
// for the spectral test function f attached to w's ensemble.
cplx group_integral_rhs(const LaurentWeight& w, const EigenAngles& x,
                        const EigenAngles& y);

}  // namespace cpe
