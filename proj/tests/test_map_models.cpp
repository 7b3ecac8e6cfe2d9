#include <cmath>

#include "doctest.h"
#include "eldyn/map_models.hpp"

using namespace eldyn;

namespace {

std::vector<EntireMap> all_maps() {
  return {
      EntireMap::exp_affine(std::polar(1.0, kTwoPi * 0.6180339887498949)),
      EntireMap::exp_shift({-2.0, 0.0}),
      EntireMap::sine({1.0, 0.0}),
      EntireMap::cosine({1.0, 0.0}, {1.0, 0.0}),
      EntireMap::zexp(),
      EntireMap::petal_exp(),
  };
}

}  // namespace

TEST_CASE("derivative matches central finite differences") {
  const double h = 1e-6;
  for (const EntireMap& m : all_maps()) {
    for (int i = 0; i < 50; ++i) {
      cplx z(uniform(3, i, 0, -3.0, 3.0), uniform(3, i, 1, -3.0, 3.0));
      cplx fd = (m.evaluate(z + h) - m.evaluate(z - h)) / (2.0 * h);
      cplx d = m.derivative(z);
      CHECK(std::abs(fd - d) <= 1e-5 * (1.0 + std::abs(d)));
    }
  }
}

TEST_CASE("spot values") {
  EntireMap es = EntireMap::exp_shift({-2.0, 0.0});
  CHECK(es.evaluate({1.0, 0.0}).real() == doctest::Approx(std::exp(1.0) - 2.0));
  CHECK(es.evaluate({1.0, 0.0}).imag() == doctest::Approx(0.0));

  EntireMap cs = EntireMap::cosine({1.0, 0.0}, {1.0, 0.0});
  CHECK(cs.evaluate({0.0, 0.0}).real() == doctest::Approx(2.0));  // e^0 + e^0

  EntireMap ze = EntireMap::zexp();
  CHECK(ze.evaluate({1.0, 0.0}).real() == doctest::Approx(std::exp(1.0)));

  EntireMap pe = EntireMap::petal_exp();
  CHECK(std::abs(pe.evaluate({0.0, 0.0})) == doctest::Approx(0.0));  // fixed point at 0
}

TEST_CASE("bound K = 1 + max(|f(0)|, sup |S(f)|)") {
  CHECK(EntireMap::exp_shift({-2.0, 0.0}).bound_K() == doctest::Approx(3.0));
  CHECK(EntireMap::cosine({1.0, 0.0}, {1.0, 0.0}).bound_K() == doctest::Approx(3.0));
  CHECK(EntireMap::sine({1.0, 0.0}).bound_K() == doctest::Approx(2.0));
  CHECK(EntireMap::exp_affine(std::polar(1.0, 1.0)).bound_K() == doctest::Approx(2.0));
}

TEST_CASE("singular sets are small and bounded") {
  for (const EntireMap& m : all_maps()) {
    SingularSet s = m.singular_values();
    CHECK(!s.values.empty());
    CHECK(s.values.size() <= 4);
    for (const SingularValue& v : s.values) {
      CHECK(std::isfinite(v.point.real()));
      CHECK(std::abs(v.point) < m.bound_K());  // K exceeds every singular value
    }
  }
}

TEST_CASE("descriptor round trip") {
  for (const EntireMap& m : all_maps()) {
    EntireMap back = EntireMap::from_descriptor(m.descriptor());
    CHECK(back.family() == m.family());
    CHECK(std::abs(back.param() - m.param()) < 1e-12);
    CHECK(std::abs(back.param2() - m.param2()) < 1e-12);
  }
}

TEST_CASE("family names round trip") {
  for (const EntireMap& m : all_maps())
    CHECK(family_from_name(family_name(m.family())) == m.family());
  CHECK_THROWS_AS(family_from_name("nosuch"), std::invalid_argument);
}
