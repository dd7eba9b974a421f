#pragma once

#include "cpe/laurent.hpp"
#include "cpe/common.hpp"

#include <functional>
#include <string>

namespace cpe {

// Candidate kernel g for the order-n sign-consistency form. g receives
// the raw angle difference theta_a - phi_b with both angles in [0, 2 pi),
// so the argument ranges over (-2 pi, 2 pi) and is NOT reduced mod 2 pi:
// one candidate family is genuinely 4 pi-periodic.
struct FrequencyCandidate {
  std::string name;
  int order_cap = 7;
  std::function<cplx(int n, double dtheta)> g;

  // Laurent data, present only for candidates given by integer-power
  // series: coefficient c_k of z^k at order n, window half-extension
  // beyond [0, n-1], and the certified discarded mass.
  std::function<cplx(int n, long k)> series_coeff;
  std::function<long(int n)> series_halfwidth;
  std::function<double(int n)> series_tail;
};

FrequencyCandidate make_dlvp_candidate();
FrequencyCandidate make_theta_candidate(double t);
FrequencyCandidate make_rank1_candidate(double gamma);
// The de la Vallee Poussin-type candidate with the central coefficient of
// each odd order sign-flipped: still real on the circle, no longer
// sign-consistent.
FrequencyCandidate make_corrupted_dlvp_candidate();

// Convert a series candidate at order n into the circle weight
// u_s = c_{M + chi - 1 - s}, n = 2M + chi.
LaurentWeight candidate_weight(const FrequencyCandidate& c, int n);

// The order-n form
//   Delta(x) Delta(y^{-1}) det[g(theta_a - phi_b)] / det(x y^{-1})^m,
// m = floor(n/2) for odd n and floor(n/2) - 1 for even n, with
// x = e^{i theta}, y = e^{i phi}. Real for a parity-consistent g; the
// sign-consistency claim is that it is nonnegative for sorted angle
// configurations.
cplx pfreq_form(const FrequencyCandidate& c, const std::vector<double>& theta,
                const std::vector<double>& phi);

struct OrderCheck {
  bool pass = false;
  long violations = 0;
  double worst = 0.0;  // most negative scaled value observed
  long trials = 0;
};

// Randomized nonnegativity check at order n: half the configurations are
// interlacing (theta_1 <= phi_1 <= theta_2 <= ...), half independent
// sorted uniforms; a value below -1e-12 relative to the term-magnitude
// scale counts as a violation.
OrderCheck check_order(const FrequencyCandidate& c, int n, long trials,
                       std::uint64_t seed);

}  // namespace cpe
