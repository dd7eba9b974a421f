#include "cpe/kernel.hpp"
#include "cpe/ensembles.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace cpe;

namespace {

double gram_defect(const BiorthSystem& sys) {
  Eigen::MatrixXcd G = gram_matrix(sys);
  return (G - Eigen::MatrixXcd::Identity(sys.N, sys.N)).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE("biorth") {

TEST_CASE("flat ensemble reproduces the rotation-invariant kernel") {
  const LaurentWeight w = resolve_weight(make_haar(), 2);
  const BiorthSystem sys = biorth_polya(w);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-pi, pi);
  for (int t = 0; t < 20; ++t) {
    const cplx z1 = std::polar(1.0, u(rng)), z2 = std::polar(1.0, u(rng));
    const cplx expect = 1.0 + z1 / z2;
    CHECK(std::abs(sys.kernel(z1, z2) - expect) <= 1e-13 * (1.0 + std::abs(expect)));
  }
  CHECK(std::abs(chi_polynomial(w, cplx(0.7, 0.2)) - cplx(1.7, 0.2)) <= 1e-14);
}

TEST_CASE("coefficient pairing is the identity") {
  CHECK(gram_defect(biorth_polya(resolve_weight(make_jacobi(1.0, 0.3), 3))) <=
        1e-12);
  CHECK(gram_defect(biorth_polya(resolve_weight(make_gauss(0.5), 4))) <= 1e-12);
  CHECK(gram_defect(biorth_polya(resolve_weight(
            make_rank1({0.2, -0.35, 0.5, 0.15, -0.4}), 3))) <= 1e-12);
}

TEST_CASE("descending coefficient recursion holds exactly") {
  // (j - k) P[j][k] == P[j-1][k]: both sides are the same product of
  // exactly representable factors, so the match is bitwise.
  const LaurentWeight w = resolve_weight(make_jacobi(2.5, -0.4), 5);
  const BiorthSystem sys = biorth_polya(w);
  for (int j = 1; j < sys.N; ++j)
    for (int k = 0; k < j; ++k) {
      const cplx lhs = static_cast<double>(j - k) * sys.P[j][k];
      const cplx rhs = sys.P[j - 1][k];
      CHECK(std::abs(lhs - rhs) <= 1e-15 * std::abs(rhs));
    }
}

TEST_CASE("forcing a zero tolerance applies the recorded correction") {
  const LaurentWeight w = resolve_weight(make_jacobi(1.0, 0.3), 4);
  const BiorthSystem plain = biorth_polya(w);
  CHECK(plain.repair_norm == 0.0);

  const BiorthSystem repaired = biorth_polya(w, 0.0);
  CHECK(repaired.repair_norm > 0.0);
  CHECK(repaired.repair_norm <= 1e-12);
  CHECK(gram_defect(repaired) <= 1e-14);
}

TEST_CASE("closed-form system matches the generic construction") {
  for (auto [N, alpha, gamma] :
       {std::tuple{2, 1.0, 0.3}, {3, 2.5, -0.4}}) {
    const BiorthSystem a =
        biorth_polya(resolve_weight(make_jacobi(alpha, gamma), N));
    const BiorthSystem b = jacobi_biorth_closed(N, alpha, gamma);
    REQUIRE(a.q_lo == b.q_lo);
    REQUIRE(a.Q[0].size() == b.Q[0].size());
    for (int j = 0; j < N; ++j) {
      for (std::size_t k = 0; k < a.P[j].size(); ++k)
        CHECK(std::abs(a.P[j][k] - b.P[j][k]) <= 1e-12 * std::abs(b.P[j][k]));
      for (std::size_t m = 0; m < a.Q[j].size(); ++m)
        CHECK(std::abs(a.Q[j][m] - b.Q[j][m]) <=
              1e-12 * (1e-300 + std::abs(b.Q[j][m])));
    }
  }
}

TEST_CASE("convolution transport against a direct build") {
  const int N = 3;
  const LaurentWeight w = resolve_weight(make_jacobi(1.5, 0.3), N);

  SUBCASE("identity system carries the weight itself") {
    const BiorthSystem direct = biorth_polya(w);
    const BiorthSystem via = kernel_convolved(
        w, convolution_identity_system(N, w.s_lo, w.s_hi()));
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-pi, pi);
    for (int t = 0; t < 10; ++t) {
      const cplx z1 = std::polar(1.0, u(rng)), z2 = std::polar(1.0, u(rng));
      const cplx kd = direct.kernel(z1, z2);
      CHECK(std::abs(via.kernel(z1, z2) - kd) <= 1e-11 * (1.0 + std::abs(kd)));
    }
  }

  SUBCASE("convolving with the flat weight collapses to the invariant kernel") {
    const LaurentWeight flat = resolve_weight(make_haar(), N);
    const BiorthSystem conv = kernel_convolved(flat, biorth_polya(w));
    std::mt19937_64 rng(78);
    std::uniform_real_distribution<double> u(-pi, pi);
    for (int t = 0; t < 10; ++t) {
      const cplx z1 = std::polar(1.0, u(rng)), z2 = std::polar(1.0, u(rng));
      cplx expect(0.0, 0.0);
      for (int k = 0; k < N; ++k) expect += std::pow(z1 / z2, k);
      CHECK(std::abs(conv.kernel(z1, z2) - expect) <=
            1e-11 * (1.0 + std::abs(expect)));
    }
  }
}

TEST_CASE("polynomial half evaluates through the reciprocal coefficients") {
  const LaurentWeight w = resolve_weight(make_gauss(0.7), 3);
  const cplx z(0.4, -0.3);
  cplx expect(0.0, 0.0);
  for (long l = 0; l < 3; ++l) expect += std::pow(z, l) / w.coeff(l);
  CHECK(std::abs(chi_polynomial(w, z) - expect) <= 1e-13 * std::abs(expect));
}

}  // TEST_SUITE
