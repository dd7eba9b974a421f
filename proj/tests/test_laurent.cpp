#include "cpe/laurent.hpp"
#include "cpe/ensembles.hpp"

#include "doctest.h"

#include <cmath>

using namespace cpe;

namespace {

LaurentWeight flat(int N) {
  LaurentWeight w;
  w.N = N;
  w.s_lo = 0;
  w.u.assign(static_cast<std::size_t>(N), cplx(1.0, 0.0));
  return w;
}

}  // namespace

TEST_SUITE("laurent") {

TEST_CASE("validation accepts the flat weight and rejects broken windows") {
  validate_weight(flat(3));

  LaurentWeight w = flat(3);
  w.s_lo = -1;  // window [-1, 1] no longer covers [0, 2]
  CHECK_THROWS(validate_weight(w));

  w = flat(3);
  w.u.push_back(cplx(0.5, 0.0));  // [0, 3] is asymmetric about 1
  CHECK_THROWS(validate_weight(w));

  w = flat(3);
  w.u[0] = cplx(1.0, 0.3);  // u_0 must equal conj(u_2)
  CHECK_THROWS(validate_weight(w));

  w = flat(3);
  w.u[1] = cplx(0.0, 0.0);  // zero inside the core
  CHECK_THROWS(validate_weight(w));

  w = flat(3);
  w.u[1] = cplx(-2.0, 0.0);  // odd N: middle must be positive
  CHECK_THROWS(validate_weight(w));
}

TEST_CASE("coefficients outside the window read as zero") {
  const LaurentWeight w = flat(2);
  CHECK(w.coeff(-1) == cplx(0.0, 0.0));
  CHECK(w.coeff(2) == cplx(0.0, 0.0));
  CHECK(w.coeff(1) == cplx(1.0, 0.0));
}

TEST_CASE("evaluation is the Laurent sum") {
  const LaurentWeight w = flat(2);
  for (double th : {0.4, -2.2, 3.0}) {
    const cplx z = std::polar(1.0, th);
    CHECK(std::abs(eval_weight(w, z) - (1.0 + 1.0 / z)) <= 1e-14);
  }
}

TEST_CASE("derivative weights multiply by integer powers of s") {
  const LaurentWeight w = resolve_weight(make_jacobi(1.0, 0.3), 3);
  const LaurentWeight d1 = derivative_coeffs(w, 1);
  const LaurentWeight d3 = derivative_coeffs(w, 3);
  for (long s = w.s_lo; s <= w.s_hi(); ++s) {
    CHECK(d1.coeff(s) == w.coeff(s));
    const double s2 = static_cast<double>(s) * static_cast<double>(s);
    CHECK(std::abs(d3.coeff(s) - s2 * w.coeff(s)) <= 1e-12 * (1.0 + std::abs(s2 * w.coeff(s))));
  }
  CHECK_THROWS(derivative_coeffs(w, 0));
  CHECK_THROWS(derivative_coeffs(w, 4));
}

TEST_CASE("convolution multiplies coefficientwise on the intersection") {
  const LaurentWeight a = resolve_weight(make_gauss(0.5), 2);
  const LaurentWeight b = resolve_weight(make_jacobi(2.0, 0.1), 2);
  const LaurentWeight c = convolve(a, b);
  CHECK(c.s_lo == std::max(a.s_lo, b.s_lo));
  CHECK(c.s_hi() == std::min(a.s_hi(), b.s_hi()));
  for (long s = c.s_lo; s <= c.s_hi(); ++s)
    CHECK(std::abs(c.coeff(s) - a.coeff(s) * b.coeff(s)) <= 1e-15);
  CHECK(c.tail_bound > 0.0);
  validate_weight(c);
}

TEST_CASE("convolving with the flat weight truncates to the core") {
  const LaurentWeight a = resolve_weight(make_gauss(0.8), 3);
  const LaurentWeight h = flat(3);
  const LaurentWeight c = convolve(a, h);
  CHECK(c.s_lo == 0);
  CHECK(c.s_hi() == 2);
  for (long s = 0; s <= 2; ++s) CHECK(std::abs(c.coeff(s) - a.coeff(s)) <= 1e-15);
}

TEST_CASE("inversion reverses the index and is involutive") {
  const LaurentWeight w = resolve_weight(make_jacobi(1.0, 0.4), 2);
  const LaurentWeight v = inverse_weight(w);
  for (long s = w.s_lo; s <= w.s_hi(); ++s) {
    CHECK(std::abs(v.coeff(s) - w.coeff(w.N - 1 - s)) <= 1e-15);
    // reality makes reversal the same as conjugation
    CHECK(std::abs(v.coeff(s) - std::conj(w.coeff(s))) <= 1e-9 * (1.0 + std::abs(w.coeff(s))));
  }
  const LaurentWeight v2 = inverse_weight(v);
  for (long s = w.s_lo; s <= w.s_hi(); ++s) CHECK(v2.coeff(s) == w.coeff(s));
  validate_weight(v);
}

TEST_CASE("phase shift multiplies by a centered power and stays valid") {
  const LaurentWeight w = resolve_weight(make_jacobi(1.5, -0.2), 3);
  const double phi = 0.9;
  const LaurentWeight v = phase_shift_weight(w, std::polar(1.0, phi));
  const double c = 0.5 * (w.N - 1);
  for (long s = w.s_lo; s <= w.s_hi(); ++s) {
    const cplx expect = w.coeff(s) * std::polar(1.0, phi * (static_cast<double>(s) - c));
    CHECK(std::abs(v.coeff(s) - expect) <= 1e-13 * (1.0 + std::abs(expect)));
  }
  validate_weight(v);
  CHECK_THROWS(phase_shift_weight(w, cplx(1.1, 0.0)));
}

TEST_CASE("trim drops zero edge pairs only") {
  LaurentWeight w;
  w.N = 2;
  w.s_lo = -2;
  w.u = {cplx(0.0, 0.0), cplx(0.2, 0.1), cplx(1.0, 0.1), cplx(1.0, -0.1),
         cplx(0.2, -0.1), cplx(0.0, 0.0)};
  const LaurentWeight t = trim_weight(w);
  CHECK(t.s_lo == -1);
  CHECK(t.s_hi() == 2);
  CHECK(t.u.size() == 4);
  validate_weight(t);
}

TEST_CASE("json round trip is lossless") {
  LaurentWeight w = resolve_weight(make_jacobi(0.7, 0.2), 2);
  w.tail_bound = 3.25e-11;
  const LaurentWeight v = weight_from_json(weight_to_json(w));
  CHECK(v.N == w.N);
  CHECK(v.s_lo == w.s_lo);
  CHECK(v.tail_bound == w.tail_bound);
  REQUIRE(v.u.size() == w.u.size());
  for (std::size_t k = 0; k < w.u.size(); ++k) CHECK(v.u[k] == w.u[k]);
}

TEST_CASE("json parsing validates the payload") {
  CHECK_THROWS(weight_from_json("{\"N\": 2, \"s_lo\": 0, \"coeffs\": [[1,0]], \"tail_bound\": 0}"));
  CHECK_THROWS(weight_from_json("not json"));
}

}  // TEST_SUITE
