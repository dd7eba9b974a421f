#include "cpe/bilateral.hpp"

#include "cpe/gammafn.hpp"

namespace cpe {

namespace {

bool is_integer_real(cplx z) {
  return z.imag() == 0.0 && z.real() == std::floor(z.real());
}

void validate(const BilateralParams& p, cplx x) {
  require(p.a.size() == p.b.size(),
          "bilateral_H: two-sided convergence on |x|=1 needs equally many "
          "upper and lower parameters");
  for (cplx aj : p.a)
    if (is_integer_real(aj) && aj.real() >= 1.0)
      fail("bilateral_H: upper parameter at a positive integer");
  for (cplx bj : p.b)
    if (is_integer_real(bj) && bj.real() <= 0.0)
      fail("bilateral_H: lower parameter at a non-positive integer");
  require(close(std::abs(x), 1.0, 1e-12, 1e-12),
          "bilateral_H: argument must lie on the unit circle");
}

// Term at index s relative to the Gamma prefactor:
//   prod Gamma(a+s) / prod Gamma(b+s) * x^s,
// computed in log space; exactly 0 when some b+s hits a non-positive
// integer (the reciprocal Gamma zero).
cplx term_at(const BilateralParams& p, cplx log_x, long s) {
  cplx lg(0.0, 0.0);
  for (cplx aj : p.a) {
    cplx arg = aj + static_cast<double>(s);
    if (is_integer_real(arg) && arg.real() <= 0.0)
      fail("bilateral_H: term hits a Gamma pole; parameters too close to "
           "integers");
    lg += log_gamma_complex(arg);
  }
  for (cplx bj : p.b) {
    cplx arg = bj + static_cast<double>(s);
    if (is_integer_real(arg) && arg.real() <= 0.0) return cplx(0.0, 0.0);
    lg -= log_gamma_complex(arg);
  }
  return std::exp(lg + static_cast<double>(s) * log_x);
}

}  // namespace

double convergence_margin(const BilateralParams& p) {
  cplx d(0.0, 0.0);
  for (cplx bj : p.b) d += bj;
  for (cplx aj : p.a) d -= aj;
  return d.real();
}

BilateralResult bilateral_H(const BilateralParams& p, cplx x,
                            double tol, long max_half_width) {
  validate(p, x);
  double d = convergence_margin(p);
  bool at_one = std::abs(x - 1.0) < 1e-8;
  if (at_one)
    require(d > 1.0, "bilateral_H: divergent at x = 1 (margin <= 1)");
  else
    require(d > 0.0, "bilateral_H: non-positive convergence margin");

  cplx log_x = std::log(x);

  cplx log_pref(0.0, 0.0);
  for (cplx bj : p.b) log_pref += log_gamma_complex(bj);
  for (cplx aj : p.a) log_pref -= log_gamma_complex(aj);
  cplx pref = std::exp(log_pref);

  long S = 64;
  cplx sum(0.0, 0.0);
  double remainder = 0.0;
  for (;;) {
    // Kahan-compensated symmetric sweep.
    cplx acc(0.0, 0.0), comp(0.0, 0.0);
    auto add = [&](cplx t) {
      cplx y = t - comp;
      cplx u = acc + y;
      comp = (u - acc) - y;
      acc = u;
    };
    add(term_at(p, log_x, 0));
    for (long s = 1; s <= S; ++s) {
      add(term_at(p, log_x, s));
      add(term_at(p, log_x, -s));
    }
    sum = acc;

    double edge = std::abs(term_at(p, log_x, S)) +
                  std::abs(term_at(p, log_x, -S));
    if (d > 1.05) {
      // Absolute tail: |t_s| decays like |s|^{-d}, so the tail is bounded
      // by |t_S| * S / (d - 1) per side.
      remainder = edge * static_cast<double>(S) / (d - 1.0);
    } else {
      // Conditional convergence: summation by parts against the geometric
      // phase gives a bound proportional to 1/|1-x|.
      remainder = (2.0 / std::abs(1.0 - x)) * 4.0 * edge;
    }
    remainder *= std::abs(pref);

    if (remainder <= tol * std::max(1e-300, std::abs(pref * sum)) ||
        S >= max_half_width)
      break;
    S *= 2;
    if (S > max_half_width) S = max_half_width;
  }

  return BilateralResult{pref * sum, remainder, S};
}

}  // namespace cpe
