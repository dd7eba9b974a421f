#pragma once

#include "cpe/common.hpp"

namespace cpe {

// Bilateral hypergeometric series
//   pHq[a; b | x] = (prod Gamma(b) / prod Gamma(a))
//                   * sum_{s in Z} (prod Gamma(a+s) / prod Gamma(b+s)) x^s.
// Parameters must avoid the poles that make terms blow up: no a_j may be
// a positive integer and no b_j a non-positive integer. On |x| = 1 the
// series converges for d = Re(sum b - sum a) > 0 when x != 1 (oscillation
// supplies the extra decay) and needs d > 1 at x = 1.
struct BilateralParams {
  std::vector<cplx> a;
  std::vector<cplx> b;
};

struct BilateralResult {
  cplx value;
  double remainder;  // certified bound on the truncation error
  long terms;        // window half-width actually used
};

// d = Re(sum b - sum a); the series on |x|=1 converges for d > 0 except
// at x = 1 where the terms are eventually one-signed and d > 1 is needed.
double convergence_margin(const BilateralParams& p);

// Evaluate with an adaptive symmetric window, doubling until the
// certified remainder drops below tol relative to the partial sum.
// Throws if parameters are invalid or the convergence margin rules the
// point out.
BilateralResult bilateral_H(const BilateralParams& p, cplx x,
                            double tol = 1e-13,
                            long max_half_width = 200000);

}  // namespace cpe
