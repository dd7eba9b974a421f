#pragma once

#include "cpe/common.hpp"

#include <iosfwd>

namespace cpe {

// Weight on the unit circle represented by its Laurent coefficients:
//   w(z) = sum_s u_s z^{-s},  s in [s_lo, s_hi],
// with the convention that the transform of the weight at integer s is
// exactly u_s. The window always covers [0, N-1] and is symmetric about
// (N-1)/2. tail_bound certifies the total absolute mass of discarded
// coefficients outside the window (0 for exactly supported weights).
struct LaurentWeight {
  int N = 0;
  long s_lo = 0;
  std::vector<cplx> u;    // u[k] is the coefficient at s = s_lo + k
  double tail_bound = 0.0;

  long s_hi() const { return s_lo + static_cast<long>(u.size()) - 1; }

  cplx coeff(long s) const {
    if (s < s_lo || s > s_hi()) return cplx(0.0, 0.0);
    return u[static_cast<std::size_t>(s - s_lo)];
  }
};

// Structural checks: window covers [0, N-1] and is symmetric about
// (N-1)/2; the reality constraint u_s = conj(u_{N-1-s}) holds within tol;
// no zero coefficient inside [0, N-1]; for odd N the middle coefficient
// is real and positive. Throws with a specific message on violation.
void validate_weight(const LaurentWeight& w, double tol = 1e-9);

// Evaluate w(z) = sum_s u_s z^{-s} for |z| = 1 (no modulus check; callers
// pass unit-circle points).
cplx eval_weight(const LaurentWeight& w, cplx z);

// Coefficients of (-z d/dz)^{b-1} w as a Laurent weight on the same
// window: coefficient at s becomes s^{b-1} u_s. Requires 1 <= b <= N.
LaurentWeight derivative_coeffs(const LaurentWeight& w, int b);

// Coefficientwise product on the window intersection; models the
// multiplicative convolution of the two densities. Tail bounds propagate
// weighted by the other factor's largest coefficient modulus.
LaurentWeight convolve(const LaurentWeight& a, const LaurentWeight& b);

// Index reversal u~_s = u_{N-1-s}; equals conj(u_s) by reality. Involutive.
LaurentWeight inverse_weight(const LaurentWeight& w);

// Rotation by a fixed phase z0 on the unit circle:
// u'_s = u_s * z0^{s-(N-1)/2}, principal square root for half-integer
// exponents. Preserves the reality constraint.
LaurentWeight phase_shift_weight(const LaurentWeight& w, cplx z0);

// JSON round trip. Schema:
//   {"N": int, "s_lo": int, "coeffs": [[re, im], ...], "tail_bound": real}
std::string weight_to_json(const LaurentWeight& w);
LaurentWeight weight_from_json(const std::string& text);

// Drop exact-zero coefficients at the window edges while keeping the
// window symmetric about (N-1)/2 and covering [0, N-1].
LaurentWeight trim_weight(LaurentWeight w);

}  // namespace cpe
