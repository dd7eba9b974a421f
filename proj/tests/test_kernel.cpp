#include "cpe/kernel.hpp"
#include "cpe/ensembles.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace cpe;

TEST_SUITE("kernel") {

TEST_CASE("two evaluation routes agree, including on the diagonal") {
  const LaurentWeight w = resolve_weight(make_gauss(0.6), 3);
  const BiorthSystem sys = biorth_polya(w);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-pi, pi);
  for (int t = 0; t < 20; ++t) {
    const cplx z1 = std::polar(1.0, u(rng)), z2 = std::polar(1.0, u(rng));
    const cplx ks = kernel_eval(w, z1, z2, KernelMethod::Series);
    CHECK(std::abs(ks - sys.kernel(z1, z2)) <= 1e-13 * (1.0 + std::abs(ks)));
    const cplx kc = kernel_eval(w, z1, z2, KernelMethod::ChristoffelDarboux);
    CHECK(std::abs(kc - ks) <= 1e-11 * (1.0 + std::abs(ks)));
    const cplx kd = kernel_eval(w, z1, z1, KernelMethod::ChristoffelDarboux);
    CHECK(std::abs(kd - kernel_eval(w, z1, z1)) <= 1e-11 * (1.0 + std::abs(kd)));
    CHECK(kd.real() > 0.0);
  }
}

TEST_CASE("telescoped form eligibility tracks the coefficient decay") {
  CHECK(cd_eligible(resolve_weight(make_haar(), 3)));
  CHECK(cd_eligible(resolve_weight(make_gauss(0.7), 2)));
  CHECK(cd_eligible(resolve_weight(make_jacobi(2.5, 0.7), 2)));
  const LaurentWeight slow = resolve_weight(make_jacobi(0.5, 0.2), 2);
  CHECK(!cd_eligible(slow));
  CHECK_THROWS(kernel_eval(slow, cplx(1.0, 0.0), cplx(0.0, 1.0),
                           KernelMethod::ChristoffelDarboux));
}

TEST_CASE("fitted decay exponent matches the algebraic tail order") {
  const LaurentWeight r = resolve_weight(
      make_rank1({0.2, -0.35, 0.5, 0.15, -0.4}), 2);
  CHECK(std::abs(decay_exponent(r) - 5.0) <= 0.02);
  CHECK(decay_exponent(resolve_weight(make_gauss(0.7), 2)) > 20.0);
  const LaurentWeight j = resolve_weight(make_jacobi(1.5, 0.3), 2);
  CHECK(std::abs(decay_exponent(j) - 3.5) <= 0.05);
}

TEST_CASE("fixed-spectrum kernel pinned value and contour agreement") {
  // Jacobi(alpha 1, gamma 0.3), N = 2, coefficients restricted to
  // [-200, 201]; the reference value was computed independently from the
  // same truncation.
  const LaurentWeight full = resolve_weight(make_jacobi(1.0, 0.3), 2);
  REQUIRE(full.s_lo <= -200);
  LaurentWeight w;
  w.N = 2;
  w.s_lo = -200;
  w.u.assign(full.u.begin() + (-200 - full.s_lo),
             full.u.begin() + (202 - full.s_lo));
  w.tail_bound = 1e-4;
  validate_weight(w);

  const EigenAngles x(std::vector<double>{0.3, -1.1});
  const cplx z1 = std::polar(1.0, 0.8), z2 = std::polar(1.0, -2.0);
  const cplx pinned(0.014387505553942394, 0.08341708415762225);

  const cplx ks = kernel_fixed(w, x, z1, z2, FixedMethod::Series);
  CHECK(std::abs(ks - pinned) <= 1e-12);
  const cplx kc = kernel_fixed(w, x, z1, z2, FixedMethod::Contour);
  CHECK(std::abs(kc - pinned) <= 1e-7);

  CHECK_THROWS(kernel_fixed(w, EigenAngles(std::vector<double>{0.3}), z1, z2));
  CHECK_THROWS(kernel_fixed(
      w, EigenAngles(std::vector<double>{0.3, 0.3 + 0.5 * gap_tol}), z1, z2));
}

TEST_CASE("contour quadrature refuses windows it cannot resolve") {
  // Unit coefficients at +-300 from the core make the off-circle
  // amplification ~1.125^300, far past what the quadrature cancels.
  LaurentWeight w;
  w.N = 2;
  w.s_lo = -300;
  w.u.assign(602, cplx(0.0, 0.0));
  w.u.front() = cplx(1.0, 0.0);
  w.u.back() = cplx(1.0, 0.0);
  w.u[300] = cplx(1.0, 0.0);  // s = 0
  w.u[301] = cplx(1.0, 0.0);  // s = 1
  w.tail_bound = 0.0;
  validate_weight(w);
  const EigenAngles x(std::vector<double>{0.3, -1.1});
  CHECK_THROWS(kernel_fixed(w, x, cplx(1.0, 0.0), cplx(0.0, 1.0),
                            FixedMethod::Contour));
  CHECK_NOTHROW(kernel_fixed(w, x, cplx(1.0, 0.0), cplx(0.0, 1.0),
                             FixedMethod::Series));
}

TEST_CASE("grid tabulation matches pointwise evaluation") {
  const LaurentWeight w = resolve_weight(make_jacobi(1.0, 0.3), 2);
  const KernelGrid g = kernel_grid(w, 8, 4);
  REQUIRE(g.th1.size() == std::size_t{8});
  REQUIRE(g.th2.size() == std::size_t{4});
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 4; ++j) {
      const cplx expect = kernel_eval(w, std::polar(1.0, g.th1[i]),
                                      std::polar(1.0, g.th2[j]));
      CHECK(std::abs(g.K(i, j) - expect) <= 1e-11 * (1.0 + std::abs(expect)));
    }

  const LaurentWeight flat = resolve_weight(make_haar(), 2);
  const KernelGrid gs = kernel_grid(flat, 6, 6, KernelMethod::Series);
  const KernelGrid gc = kernel_grid(flat, 6, 6, KernelMethod::ChristoffelDarboux);
  CHECK((gs.K - gc.K).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("exact grid size clears the spectral span") {
  const LaurentWeight flat = resolve_weight(make_haar(), 2);
  CHECK(exact_grid_size(flat) == 2048);
  const LaurentWeight j = resolve_weight(make_jacobi(1.0, 0.3), 2);
  CHECK(exact_grid_size(j) == 2048);
  const LaurentWeight r = resolve_weight(
      make_rank1({0.2, -0.35, 0.5, 0.15, -0.4}), 2);
  const int M = exact_grid_size(r);
  CHECK((M & (M - 1)) == 0);
  // Largest frequency in any polynomial-times-window product.
  CHECK(M > std::max(r.s_hi(), r.N - 1 - r.s_lo) + r.N);
}

}  // TEST_SUITE
