#pragma once

#include "cpe/common.hpp"

namespace cpe {

// Principal branch of log Gamma on the cut plane (cut along the negative
// real axis). Continuous for Im z != 0; real on the positive real axis.
cplx log_gamma_complex(cplx z);

// Gamma itself; overflow-prone for large |z|, prefer log_gamma_complex
// when combining many factors.
cplx gamma_complex(cplx z);

// 1/Gamma(z), entire: returns exactly 0 at non-positive integer reals.
cplx reciprocal_gamma(cplx z);

// log n! for n >= 0.
double log_factorial(long n);

// log of the binomial coefficient C(n, k); requires 0 <= k <= n.
double log_binomial(long n, long k);

}  // namespace cpe
