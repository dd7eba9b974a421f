#pragma once

#include "cpe/laurent.hpp"
#include "cpe/common.hpp"

#include <Eigen/Dense>

namespace cpe {

// Bi-orthonormal pair (P_j, Q_j), j = 0..N-1, with
//   P_j(z) = sum_{k=0}^{j} P[j][k] z^k,
//   Q_j(z) = sum_m Q[j][m] z^{-(q_lo + m)},
// normalized so the coefficient pairing <P_a, Q_b> = sum_k p_k q_k
// (the constant term of P_a Q_b, i.e. the circle average of
// P_a(e^{it}) Q_b(e^{it})) equals delta_ab.
struct BiorthSystem {
  int N = 0;
  std::vector<std::vector<cplx>> P;
  long q_lo = 0;
  std::vector<std::vector<cplx>> Q;
  double repair_norm = 0.0;  // size of the Gram correction, if one was applied

  cplx evalP(int j, cplx z) const;
  cplx evalQ(int j, cplx z) const;
  cplx kernel(cplx z1, cplx z2) const;  // sum_j P_j(z1) Q_j(z2)
};

// Construct the system attached to a weight:
//   P[j][k] = (-1)^k / ((j-k)! k! u_k),
//   Q[j][l] = prod_{m=0}^{j-1} (m - l) * u_l  over the weight window.
// The Gram matrix of these is the identity up to rounding; a correction
// P <- G^{-1} P is applied when the defect lies in (tol, 1e-6] and the
// defect size is recorded; larger defects throw.
BiorthSystem biorth_polya(const LaurentWeight& w, double tol = 1e-12);

// Gram matrix of the coefficient pairing <P_a, Q_b>.
Eigen::MatrixXcd gram_matrix(const BiorthSystem& sys);

// The same system with every Gamma-factor expression expanded in closed
// form (log-Gamma sums, one exponential per coefficient); an arithmetic
// path independent of biorth_polya for the confluent family.
BiorthSystem jacobi_biorth_closed(int N, double alpha, double gamma,
                                  long window_half = 256);

// sum_{l=0}^{N-1} z^l / u_l.
cplx chi_polynomial(const LaurentWeight& w, cplx z);

enum class KernelMethod { Series, ChristoffelDarboux };

// Correlation kernel K(z1, z2) = sum_{j<N} P_j(z1) Q_j(z2), either summed
// directly or through the telescoped two-term form. The telescoped form
// needs the coefficients to decay faster than |s|^{-(N+1.5)} (or a
// certified finite window); otherwise it throws.
cplx kernel_eval(const LaurentWeight& w, cplx z1, cplx z2,
                 KernelMethod method = KernelMethod::Series);

// Least-squares decay exponent fitted on the outer tenth of the window;
// large when the coefficients decay faster than any power.
double decay_exponent(const LaurentWeight& w);
bool cd_eligible(const LaurentWeight& w);

enum class FixedMethod { Series, Contour };

// Kernel of the spectrum of (fixed x) times (random factor with weight w):
//   K(z1, z2) = sum_{j=0}^{N-1} P_j(z1) w(z2 / x_{j+1}),
//   P_j(z1) = [sum_k (coeff of z^k in prod_{l != j+1}(z - x_l)) z1^k / u_k]
//             / prod_{l != j+1} (x_{j+1} - x_l).
// The contour form reproduces the same kernel from a double quadrature
// over circles |z'| = R (outer variable) and the annulus boundary
// |z'| in {rho, 1/rho} (inner variable).
cplx kernel_fixed(const LaurentWeight& w, const EigenAngles& x,
                  cplx z1, cplx z2, FixedMethod method = FixedMethod::Series);

// Transport a system through convolution with w: the system of
// (inner ensemble) * (weight w) has
//   P'[j][k] = P[j][k] / u_k,   Q'[j][l] = u_l Q[j][l]
// on the window intersection.
BiorthSystem kernel_convolved(const LaurentWeight& w,
                              const BiorthSystem& inner);

// System whose convolution action is the identity: the w-independent
// halves P[j][k] = (-1)^k/((j-k)! k!), Q[j][l] = prod_{m<j}(m - l) over
// the given window.
BiorthSystem convolution_identity_system(int N, long s_lo, long s_hi);

// Tabulation of the kernel on a theta grid pair.
struct KernelGrid {
  std::vector<double> th1, th2;
  Eigen::MatrixXcd K;
  KernelMethod method = KernelMethod::Series;
};

// Uniform grids with M1 x M2 points; P and Q are tabulated once, so the
// cost is O(N (M1 + M2) W + N M1 M2).
KernelGrid kernel_grid(const LaurentWeight& w, int M1, int M2,
                       KernelMethod method = KernelMethod::Series);

// Grid size that makes uniform-grid circle averages of kernel products
// exact (a power of two exceeding every frequency the integrand carries).
int exact_grid_size(const LaurentWeight& w);

}  // namespace cpe
