#include <cmath>

#include "doctest.h"
#include "eldyn/orbit_engine.hpp"

using namespace eldyn;

namespace {

LogDynamics& expshift2() {
  static LogDynamics ld(EntireMap::exp_shift({-2.0, 0.0}));
  return ld;
}

}  // namespace

TEST_CASE("BigPoint representation switch") {
  LogDynamics& ld = expshift2();
  BigPoint small = BigPoint::from_value(ld, {3.0, 4.0});
  CHECK(!small.is_log());
  CHECK(small.log_modulus() == doctest::Approx(std::log(5.0)));
  BigPoint big = BigPoint::from_value(ld, {1e200, 0.0});
  CHECK(big.is_log());
  CHECK(big.log_modulus() == doctest::Approx(std::log(1e200)));
  BigPoint back = BigPoint::from_log(ld, LogPoint{{2.0, 0.5}, 0});
  CHECK(!back.is_log());  // materializes below the switch
  CHECK(std::abs(back.value() - std::exp(cplx(2.0, 0.5))) < 1e-12);
  CHECK_THROWS_AS(small.logp(), NumericError);
  CHECK_THROWS_AS(big.value(), NumericError);
}

TEST_CASE("step agrees with direct evaluation and lifts past the switch") {
  LogDynamics& ld = expshift2();
  BigPoint p = step(ld, BigPoint::from_value(ld, {0.0, 0.0}));
  CHECK(!p.is_log());
  CHECK(p.value().real() == doctest::Approx(-1.0));
  BigPoint q = step(ld, BigPoint::from_value(ld, {40.0, 0.0}));
  CHECK(q.is_log());
  CHECK(q.logp().zeta.real() == doctest::Approx(40.0).epsilon(1e-12));
  CHECK(q.logp().strip == 0);
  CHECK_THROWS_AS(step(ld, BigPoint::from_log(ld, LogPoint{{800.0, 0.0}, 0})),
                  RepresentationOverflow);
}

TEST_CASE("classify_growth verdicts") {
  LogDynamics& ld = expshift2();
  OrbitRecord esc = classify_growth(ld, {0}, 5.0, BigPoint::from_value(ld, {60.0, 0.0}), 50);
  CHECK(esc.classification == OrbitClass::Escaping);
  CHECK(esc.escaped_by_overflow);
  CHECK(esc.n_detect == 2);
  CHECK(esc.domains_visited == std::vector<int>{0});

  // the attracting fixed point sits below the modulus floor immediately
  OrbitRecord low = classify_growth(ld, {}, 5.0, BigPoint::from_value(ld, {-1.8414, 0.0}), 50);
  CHECK(low.classification == OrbitClass::LeftDomains);
  CHECK(low.n_exit == 0);

  // wrong fundamental domain
  OrbitRecord wrong = classify_growth(ld, {1}, 5.0, BigPoint::from_value(ld, {60.0, 0.0}), 50);
  CHECK(wrong.classification == OrbitClass::LeftDomains);
  CHECK(wrong.n_exit == 0);

  // r-values are recorded alongside the orbit
  CHECK(esc.points.size() == esc.r_values.size());
  CHECK(esc.r_values.size() >= 2);
}

TEST_CASE("escape witness radius with fresh-probe re-audit") {
  LogDynamics& ld = expshift2();
  double rp = estimate_Rprime(ld, {0}, 5.0, 50);
  CHECK(rp == doctest::Approx(10.0).epsilon(1e-9));
  const double log5 = std::log(5.0);
  for (int i = 0; i < 10; ++i) {
    BigPoint probe = rprime_probe(ld, 0, std::log(rp), 777, i);  // fresh seed
    OrbitRecord rec = classify_growth(ld, {0}, 5.0, probe, 300);
    CHECK(rec.classification == OrbitClass::Escaping);
    for (const BigPoint& pt : rec.points) CHECK(pt.log_modulus() >= log5 - 1e-9);
  }
  CHECK_THROWS_AS(estimate_Rprime(ld, {0}, 1.0, 5), std::invalid_argument);  // R <= K
}

TEST_CASE("extendability probe") {
  EntireMap m = EntireMap::exp_shift({-2.0, 0.0});
  std::vector<cplx> samples;
  for (int i = 0; i < 400; ++i) {
    double rho = uniform(13, i, 0, 1.0, 40.0);
    double th = uniform(13, i, 1, -kPi, kPi);
    samples.push_back(std::polar(std::exp(rho * 0.5), th));
  }
  ShellReport rep = extendability_probe(m, samples, {10.0, 1e4, 1e7});
  CHECK(rep.radii.size() == 3);
  CHECK(rep.min_modulus.size() == 3);
  for (double v : rep.min_modulus) CHECK(v >= 0.0);
  CHECK_THROWS_AS(extendability_probe(m, samples, {10.0, 5.0}), std::invalid_argument);
  CHECK_THROWS_AS(extendability_probe(m, samples, {1e250}), EmptyShell);
}

TEST_CASE("classify_escape certifies tract escape and leaves Siegel orbits alone") {
  CHECK(classify_escape(expshift2(), {5.0, 0.0}, 100) == 3);
  CHECK(classify_escape(expshift2(), {-1.8414, 0.0}, 2000) == -1);
  LogDynamics golden(EntireMap::exp_affine(std::polar(1.0, kTwoPi * 0.6180339887498949)));
  CHECK(classify_escape(golden, {0.01, 0.0}, 5000) == -1);
}

TEST_CASE("hybrid iteration tracks direct iteration while moduli are moderate") {
  LogDynamics& ld = expshift2();
  int orbits = 0;
  for (int i = 0; i < 200; ++i) {
    cplx z(uniform(17, i, 0, -2.0, 2.0), uniform(17, i, 1, -2.0, 2.0));
    BigPoint p = BigPoint::from_value(ld, z);
    ++orbits;
    for (int n = 0; n < 30; ++n) {
      if (std::abs(z) > 1e14) break;
      z = ld.map().evaluate(z);
      p = step(ld, p);
      if (std::abs(z) > 1e14) break;
      REQUIRE(!p.is_log());
      CHECK(std::abs(p.value() - z) <= 1e-8 * (1.0 + std::abs(z)));
    }
  }
  CHECK(orbits == 200);
}
