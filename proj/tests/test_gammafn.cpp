#include "cpe/gammafn.hpp"
#include "cpe/common.hpp"

#include "doctest.h"

#include <cmath>

using namespace cpe;

TEST_SUITE("gammafn") {

TEST_CASE("log gamma matches lgamma on the positive real axis") {
  for (double x : {0.5, 1.0, 2.0, 3.7, 12.3, 41.0}) {
    const cplx lg = log_gamma_complex(cplx(x, 0.0));
    CHECK(std::abs(lg.real() - std::lgamma(x)) <= 1e-13 * std::max(1.0, std::abs(std::lgamma(x))));
    CHECK(std::abs(lg.imag()) <= 1e-13);
  }
}

TEST_CASE("recurrence Gamma(z+1) = z Gamma(z)") {
  const cplx pts[] = {{0.3, 0.7}, {-2.4, 1.1}, {-5.7, -0.2}, {8.0, -3.0}, {0.1, -9.0}};
  for (cplx z : pts) {
    const cplx lhs = gamma_complex(z + 1.0);
    const cplx rhs = z * gamma_complex(z);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
  }
}

TEST_CASE("conjugation symmetry") {
  const cplx pts[] = {{1.3, 2.7}, {-3.2, 4.0}, {0.25, -11.0}};
  for (cplx z : pts) {
    const cplx a = log_gamma_complex(std::conj(z));
    const cplx b = std::conj(log_gamma_complex(z));
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
  }
}

TEST_CASE("known values") {
  CHECK(std::abs(gamma_complex(cplx(0.5, 0.0)) - std::sqrt(pi)) <= 1e-14);
  // Gamma(1 + i)
  const cplx g = gamma_complex(cplx(1.0, 1.0));
  CHECK(std::abs(g - cplx(0.49801566811835604, -0.15494982830181069)) <= 1e-13);
}

TEST_CASE("poles of the reciprocal") {
  CHECK(reciprocal_gamma(cplx(0.0, 0.0)) == cplx(0.0, 0.0));
  CHECK(reciprocal_gamma(cplx(-3.0, 0.0)) == cplx(0.0, 0.0));
  CHECK(std::abs(reciprocal_gamma(cplx(3.0, 0.0)) - 0.5) <= 1e-14);
  CHECK_THROWS(gamma_complex(cplx(0.0, 0.0)));
  CHECK_THROWS(gamma_complex(cplx(-2.0, 0.0)));
}

TEST_CASE("factorials and binomials") {
  double lf = 0.0;
  for (int k = 2; k <= 20; ++k) {
    lf += std::log(static_cast<double>(k));
    CHECK(std::abs(log_factorial(k) - lf) <= 1e-12 * lf);
  }
  CHECK(std::abs(std::exp(log_binomial(10, 3)) - 120.0) <= 1e-10);
  CHECK(std::abs(std::exp(log_binomial(5, 0)) - 1.0) <= 1e-14);
}

}  // TEST_SUITE
