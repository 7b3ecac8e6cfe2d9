#include <cmath>

#include "doctest.h"
#include "eldyn/ray_tracer.hpp"

using namespace eldyn;

namespace {

LogDynamics& expshift2() {
  static LogDynamics ld(EntireMap::exp_shift({-2.0, 0.0}));
  return ld;
}

}  // namespace

TEST_CASE("external address parsing, printing and digit stream") {
  ExternalAddress a = ExternalAddress::parse("2,1;p:0,3");
  CHECK(a.preperiod == std::vector<int>{2, 1});
  CHECK(a.period == std::vector<int>{0, 3});
  CHECK(a.str() == "2,1;p:0,3");
  int want[] = {2, 1, 0, 3, 0, 3, 0};
  for (int k = 0; k < 7; ++k) CHECK(a.digit(k) == want[k]);

  ExternalAddress b = ExternalAddress::parse("p:0");
  CHECK(b.constant());
  CHECK(!a.constant());
  CHECK(ExternalAddress::parse("-1,2").period == std::vector<int>{-1, 2});  // all-period form

  CHECK_THROWS_AS(ExternalAddress::parse("p:"), std::invalid_argument);
  CHECK_THROWS_AS(ExternalAddress::parse("p:1,junk"), std::invalid_argument);
  CHECK_THROWS_AS(ExternalAddress::parse("p:99"), std::invalid_argument);  // digit cap
}

TEST_CASE("inverse branches select the requested fundamental domain") {
  LogDynamics& ld = expshift2();
  for (int d : {-2, -1, 0, 1, 3}) {
    cplx z = inverse_branch(ld, {30.0, 0.0}, d);
    CHECK(std::abs(ld.map().evaluate(z) - cplx(30.0, 0.0)) < 1e-9);
    CHECK(ld.domain_index(z) == d);
  }
  LogDynamics ldc(LogDynamics(EntireMap::cosine({1.0, 0.0}, {1.0, 0.0})));
  for (int d : {0, 1, 2, 3, -1}) {
    cplx z = inverse_branch(ldc, {40.0, 3.0}, d);
    CHECK(std::abs(ldc.map().evaluate(z) - cplx(40.0, 3.0)) < 1e-8);
    CHECK(ldc.domain_index(z) == d);
  }
  CHECK_THROWS_AS(inverse_branch(ld, ld.map().param(), 0), AddressInfeasible);
}

TEST_CASE("ray samples satisfy the functional equation") {
  LogDynamics& ld = expshift2();
  ExternalAddress a = ExternalAddress::parse("p:1");
  for (double t : {1.0, 2.5, 4.0}) {
    cplx g0 = ray_point(ld, a, t, 0).value();
    cplx g1 = ray_point(ld, a, t, 1).value();
    CHECK(std::abs(ld.map().evaluate(g0) - g1) < 1e-9 * (1.0 + std::abs(g1)));
  }
}

TEST_CASE("traced rays stay in their fundamental domain") {
  LogDynamics& ld = expshift2();
  auto samples = trace_ray(ld, ExternalAddress::parse("p:1"), 2.0, 6.0, 25);
  REQUIRE(samples.size() == 25);
  double prev_re = -1e9;
  for (const RaySample& s : samples) {
    REQUIRE(!s.point.is_log());
    cplx z = s.point.value();
    CHECK(ld.domain_index(z) == 1);
    CHECK(z.imag() > kPi);
    CHECK(z.imag() < 3.0 * kPi);
    CHECK(z.real() > prev_re);  // the hair runs outward
    prev_re = z.real();
  }
}

TEST_CASE("landing: constant address 0 hits the repelling real fixed point") {
  LandingResult r = land_ray(expshift2(), ExternalAddress::parse("p:0"), 200);
  REQUIRE(r.landed);
  CHECK(r.fp.point.real() == doctest::Approx(1.14619322).epsilon(1e-7));
  CHECK(std::abs(r.fp.point.imag()) < 1e-9);
  CHECK(r.fp.stability == Stability::Repelling);
  CHECK(std::abs(r.fp.multiplier) == doctest::Approx(3.14619322).epsilon(1e-6));
  CHECK(r.last_gap < 1e-12);
}

TEST_CASE("landing regressions for other families") {
  LogDynamics golden(EntireMap::exp_affine(std::polar(1.0, kTwoPi * 0.6180339887498949)));
  LandingResult ra = land_ray(golden, ExternalAddress::parse("p:1"), 300);
  REQUIRE(ra.landed);
  CHECK(ra.fp.point.real() == doctest::Approx(1.160177).epsilon(1e-5));
  CHECK(ra.fp.point.imag() == doctest::Approx(3.837848).epsilon(1e-5));
  CHECK(ra.fp.stability == Stability::Repelling);

  LogDynamics cosine(EntireMap::cosine({1.0, 0.0}, {1.0, 0.0}));
  LandingResult r0 = land_ray(cosine, ExternalAddress::parse("p:0"), 300);
  REQUIRE(r0.landed);
  CHECK(r0.fp.point.real() == doctest::Approx(0.633221).epsilon(1e-5));
  CHECK(r0.fp.point.imag() == doctest::Approx(-1.305441).epsilon(1e-5));
  LandingResult r1 = land_ray(cosine, ExternalAddress::parse("p:1"), 300);
  REQUIRE(r1.landed);
  CHECK(r1.fp.point.real() == doctest::Approx(-1.575510).epsilon(1e-5));
  CHECK(r1.fp.point.imag() == doctest::Approx(4.394466).epsilon(1e-5));
}

TEST_CASE("landing taxonomy: converged rays never land on attracting points") {
  LogDynamics& ld = expshift2();
  const char* addrs[] = {"p:0", "p:1", "p:-1", "p:2", "p:-2",
                         "p:0,1", "p:1,0", "p:0,-1", "p:1,2", "p:0,1,1"};
  int converged = 0;
  for (const char* s : addrs) {
    LandingResult r = land_ray(ld, ExternalAddress::parse(s), 400);
    if (!r.landed) continue;
    ++converged;
    CHECK(std::abs(r.fp.multiplier) >= 1.0 - 1e-6);
    CHECK(r.fp.stability != Stability::Attracting);
    CHECK(r.fp.stability != Stability::IrrationallyIndifferent);
  }
  CHECK(converged >= 8);
}

TEST_CASE("hair confinement holds at the witness radius and fails far out") {
  LogDynamics& ld = expshift2();
  ExternalAddress a = ExternalAddress::parse("p:0");
  CHECK(hair_confinement_check(ld, a, 5.0, 10.0, 100, 5.0));
  CHECK(!hair_confinement_check(ld, a, 5.0, 10.0, 20, 1e10));  // samples below that radius
  CHECK(hair_confinement_check(ld, ExternalAddress::parse("p:3"), 5.0, 10.0, 40, 5.0));
  CHECK_THROWS_AS(hair_confinement_check(ld, ExternalAddress::parse("p:0,1"), 5.0, 10.0, 10, 5.0),
                  std::invalid_argument);
}

TEST_CASE("unsupported families and bad inputs") {
  LogDynamics sine(EntireMap::sine({1.0, 0.0}));
  CHECK_THROWS_AS(land_ray(sine, ExternalAddress::parse("p:0"), 10), AddressInfeasible);
  CHECK_THROWS_AS(land_ray(expshift2(), ExternalAddress::parse("1;p:0"), 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(trace_ray(expshift2(), ExternalAddress::parse("p:0"), 5.0, 1.0, 10),
                  std::invalid_argument);
}
