#include "cpe/ensembles.hpp"
#include "cpe/gammafn.hpp"

#include "doctest.h"

#include <cmath>

using namespace cpe;

TEST_SUITE("ensembles") {

TEST_CASE("flat and binomial windows") {
  const LaurentWeight g = resolve_weight(make_haar(HaarVariant::Geometric), 4);
  CHECK(g.s_lo == 0);
  CHECK(g.s_hi() == 3);
  CHECK(g.tail_bound == 0.0);
  for (long s = 0; s <= 3; ++s) CHECK(g.coeff(s) == cplx(1.0, 0.0));

  const LaurentWeight b = resolve_weight(make_haar(HaarVariant::Binomial), 4);
  const double expect[] = {1.0, 3.0, 3.0, 1.0};
  for (long s = 0; s <= 3; ++s)
    CHECK(std::abs(b.coeff(s) - expect[s]) <= 1e-12);
}

TEST_CASE("confluent coefficients at frozen points") {
  const LaurentWeight w = resolve_weight(make_jacobi(1.0, 0.3), 2);
  CHECK(std::abs(w.coeff(-3) - cplx(0.022723154697846505, -0.006325587014248293)) <= 1e-14);
  CHECK(std::abs(w.coeff(0) - cplx(1.7739856050465113, -0.3547971210093022)) <= 1e-13);
  CHECK(std::abs(w.coeff(1) - std::conj(w.coeff(0))) <= 1e-15);
  CHECK(std::abs(w.coeff(5) - cplx(-0.01055311434841856, -0.002211446441962246)) <= 1e-14);
}

TEST_CASE("integer-parameter confluent weights have finite support") {
  // alpha = 0: exactly the binomial window
  const LaurentWeight w0 = resolve_weight(make_jacobi(0.0, 0.0), 3);
  CHECK(w0.s_lo == 0);
  CHECK(w0.s_hi() == 2);
  CHECK(w0.tail_bound == 0.0);
  CHECK(std::abs(w0.coeff(1) - 2.0) <= 1e-12);

  // alpha = 2: one extra coefficient on each side
  const LaurentWeight w2 = resolve_weight(make_jacobi(2.0, 0.0), 3);
  CHECK(w2.s_lo == -1);
  CHECK(w2.s_hi() == 3);
  CHECK(w2.tail_bound == 0.0);
  for (long s = -1; s <= 3; ++s)
    CHECK(std::abs(w2.coeff(s) - std::exp(log_binomial(4, s + 1))) <=
          1e-12 * std::exp(log_binomial(4, s + 1)));
}

TEST_CASE("heat coefficients are centered Gaussians") {
  const double t = 0.6;
  const LaurentWeight w = resolve_weight(make_gauss(t), 4);
  validate_weight(w);
  const double c = 1.5;
  for (long s = w.s_lo; s <= w.s_hi(); ++s) {
    const double d = static_cast<double>(s) - c;
    CHECK(std::abs(w.coeff(s) - std::exp(-t * d * d)) <= 1e-15);
  }
  CHECK(w.tail_bound > 0.0);
  CHECK(w.tail_bound < 1e-12);
  CHECK(theta_coeffs(t, 4).coeff(2) == w.coeff(2));
}

TEST_CASE("gamma-ratio family satisfies reality after canonical scaling") {
  for (int N : {2, 3, 5}) {
    const LaurentWeight w = resolve_weight(make_ginibre(0.9), N);
    validate_weight(w);
    // the scale normalizes the middle of the window to Gamma(nu+1)-free form
    if (N % 2 == 1) CHECK(w.coeff(N / 2).imag() == 0.0);
  }
}

TEST_CASE("reflection-product family needs enough factors and nonzero parameters") {
  CHECK_THROWS(resolve_weight(make_rank1({0.2, 0.3, 0.4}), 2));        // L < N+2
  CHECK_THROWS(resolve_weight(make_rank1({0.2, 0.0, 0.4, 0.1, 0.9}), 3));  // zero at odd N
  const LaurentWeight w = resolve_weight(make_rank1({0.2, -0.35, 0.5, 0.15, -0.4}), 3);
  validate_weight(w);
  CHECK(std::abs(w.coeff(1).imag()) <= 1e-15 * std::abs(w.coeff(1).real()));
  CHECK(w.coeff(1).real() > 0.0);
}

TEST_CASE("closed transform values agree with resolved coefficients") {
  const std::vector<EnsembleSpec> specs = {
      make_jacobi(1.3, 0.25), make_gauss(0.8), make_ginibre(1.1),
      make_rank1({0.2, -0.35, 0.5, 0.15, -0.4, 0.3})};
  for (const auto& spec : specs)
    for (int N : {2, 3}) {
      const LaurentWeight w = resolve_weight(spec, N);
      long step = std::max<long>(1, (w.s_hi() - w.s_lo) / 37);
      for (long s = w.s_lo; s <= w.s_hi(); s += step) {
        const cplx a = w.coeff(s);
        const cplx b = closed_form_transform(spec, N, s);
        CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
      }
    }
}

TEST_CASE("phase shift, inversion, product composition") {
  const EnsembleSpec base = make_jacobi(1.5, 0.3);
  const LaurentWeight w = resolve_weight(base, 3);

  const cplx z0 = std::polar(1.0, 0.7);
  const LaurentWeight ws = resolve_weight(make_phase_shift(z0, base), 3);
  for (long s = w.s_lo; s <= w.s_hi(); ++s) {
    const cplx expect = w.coeff(s) * std::polar(1.0, 0.7 * (static_cast<double>(s) - 1.0));
    CHECK(std::abs(ws.coeff(s) - expect) <= 1e-12 * (1.0 + std::abs(expect)));
  }

  const LaurentWeight wi = resolve_weight(make_inverse(base), 3);
  for (long s = w.s_lo; s <= w.s_hi(); ++s)
    CHECK(wi.coeff(s) == w.coeff(2 - s));

  const LaurentWeight wp = resolve_weight(make_product({base, make_gauss(0.5)}), 3);
  const LaurentWeight g = resolve_weight(make_gauss(0.5), 3);
  for (long s = wp.s_lo; s <= wp.s_hi(); ++s)
    CHECK(std::abs(wp.coeff(s) - w.coeff(s) * g.coeff(s)) <= 1e-15);
}

TEST_CASE("conditional ensembles have no circle weight") {
  const EnsembleSpec f = make_fixed_times({0.3, -1.1}, make_jacobi(1.0, 0.3));
  CHECK_THROWS(resolve_weight(f, 2));
  CHECK_THROWS(closed_form_transform(f, 2, 0));
}

TEST_CASE("reflection angle density is normalized") {
  for (auto [N, gamma] : {std::pair{3, 0.4}, {2, -0.7}, {4, 0.2}}) {
    const int M = 65536;
    double acc = 0.0;
    for (int m = 0; m <= M; ++m) {
      const double th = -pi + 2.0 * pi * m / M;
      const double v = rank1_angle_density(N, gamma, th);
      acc += (m == 0 || m == M) ? 0.5 * v : v;
    }
    acc /= M;
    CHECK(std::abs(acc - 1.0) <= 1e-7);
  }
}

TEST_CASE("closed-form circle weight at the center and near the cusp") {
  const cplx v0 = jacobi_closed_form_value(2, 1.0, 0.0, 0.0);
  CHECK(std::abs(v0 - std::pow(2.0, 2.0)) <= 1e-12);
  // cos(pi/2) rounds to ~6e-17, so the power is tiny but not an exact zero.
  const cplx vc = jacobi_closed_form_value(2, 1.0, 0.3, pi);
  CHECK(std::abs(vc) <= 1e-30);
}

}  // TEST_SUITE
