#include "cpe/spherical.hpp"
#include "cpe/density.hpp"

#include "doctest.h"

#include <cmath>

using namespace cpe;

TEST_SUITE("spherical") {

TEST_CASE("vandermonde forms agree") {
  const std::vector<double> th = {0.3, -1.2, 2.4, 0.9};
  const EigenAngles x(th);
  const cplx a = vandermonde(x.points());
  const cplx b = vandermonde_circle(th);
  CHECK(std::abs(a - b) <= 1e-13 * std::abs(a));
}

TEST_CASE("normalized character ratio basics") {
  const EigenAngles x({0.5, -0.9, 1.7});
  CHECK(std::abs(spherical_function(x, MultiIndex{{0, 1, 2}}) - 1.0) <= 1e-12);

  const EigenAngles y({0.4, -2.0});
  const cplx z1 = y.point(0), z2 = y.point(1);
  const cplx expect = 0.5 * (z1 + z2);
  CHECK(std::abs(spherical_function(y, MultiIndex{{0, 2}}) - expect) <= 1e-12);

  // symmetric under reordering of the index
  const cplx a = spherical_function(x, MultiIndex{{4, 0, 1}});
  const cplx b = spherical_function(x, MultiIndex{{0, 1, 4}});
  CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));

  CHECK_THROWS(spherical_function(x, MultiIndex{{0, 1, 1}}));
  CHECK_THROWS(spherical_function(EigenAngles({0.5, 0.5 + 1e-10}), MultiIndex{{0, 1}}));
}

TEST_CASE("ensemble transform is one at the base index and multiplicative") {
  const MultiIndex base{{0, 1, 2}};
  const EnsembleSpec j = make_jacobi(1.2, 0.4);
  CHECK(std::abs(ensemble_transform(j, 3, base) - 1.0) <= 1e-13);

  const EnsembleSpec g = make_gauss(0.5);
  const EnsembleSpec p = make_product({j, g});
  const MultiIndex s{{-2, 1, 4}};
  const cplx prod = ensemble_transform(j, 3, s) * ensemble_transform(g, 3, s);
  CHECK(std::abs(ensemble_transform(p, 3, s) - prod) <= 1e-13 * (1.0 + std::abs(prod)));

  // flat ensemble: transform is 1 inside the window, 0 outside
  const EnsembleSpec h = make_haar();
  CHECK(std::abs(ensemble_transform(h, 3, MultiIndex{{2, 1, 0}}) - 1.0) <= 1e-14);
  CHECK(std::abs(ensemble_transform(h, 3, s)) == 0.0);
}

TEST_CASE("conditioning multiplies by the character ratio") {
  const EnsembleSpec inner = make_jacobi(1.0, 0.3);
  const std::vector<double> xang = {0.3, -1.1};
  const EnsembleSpec f = make_fixed_times(xang, inner);
  const MultiIndex s{{-1, 3}};
  const cplx expect = spherical_function(EigenAngles(xang), s) *
                      ensemble_transform(inner, 2, s);
  const cplx got = ensemble_transform(f, 2, s);
  CHECK(std::abs(got - expect) <= 1e-13 * (1.0 + std::abs(expect)));

  CHECK(has_circle_weight(inner));
  CHECK(!has_circle_weight(f));
  CHECK(!has_circle_weight(make_product({inner, f})));
}

TEST_CASE("transform inversion recovers the heat joint density") {
  const EnsembleSpec g = make_gauss(0.5);
  const LaurentWeight w = resolve_weight(g, 2);
  for (auto th : {std::vector<double>{0.4, -1.3}, {2.2, 0.8}}) {
    const EigenAngles z(th);
    const double direct = jpdf_polya(w, z);
    const double viaT = inverse_transform_density(g, 2, z, 40);
    CHECK(std::abs(viaT - direct) <= 1e-11 * std::max(1.0, direct));
  }
  const EnsembleSpec g3 = make_gauss(0.7);
  const LaurentWeight w3 = resolve_weight(g3, 3);
  const EigenAngles z3(std::vector<double>{0.4, -1.3, 2.0});
  CHECK(std::abs(inverse_transform_density(g3, 3, z3, 30) - jpdf_polya(w3, z3)) <=
        1e-11 * std::max(1.0, jpdf_polya(w3, z3)));
}

TEST_CASE("transform inversion approaches the confluent joint density") {
  // Power-law transform decay: the tuple-window truncation dominates until
  // it meets the coefficient-window floor of the direct density near 1e-9.
  // Measured gaps at these windows sit at 3e-9 and 2e-9.
  const EnsembleSpec j2 = make_jacobi(3.0, 0.4);
  const LaurentWeight w2 = resolve_weight(j2, 2);
  const EigenAngles z2(std::vector<double>{0.9, -1.8});
  const double direct2 = jpdf_polya(w2, z2);
  const double viaT2 = inverse_transform_density(j2, 2, z2, 150);
  CHECK(std::abs(viaT2 - direct2) <= 1e-7 * std::max(1.0, direct2));

  const EnsembleSpec j3 = make_jacobi(4.0, 0.25);
  const LaurentWeight w3 = resolve_weight(j3, 3);
  const EigenAngles z3(std::vector<double>{0.9, -1.8, 0.1});
  const double direct3 = jpdf_polya(w3, z3);
  const double viaT3 = inverse_transform_density(j3, 3, z3, 80);
  CHECK(std::abs(viaT3 - direct3) <= 1e-7 * std::max(1.0, direct3));
}

}  // TEST_SUITE
