#pragma once

#include <string>
#include <vector>

#include "eldyn/fixed_points.hpp"
#include "eldyn/orbit_engine.hpp"

namespace eldyn {

// Combinatorial name of a ray: the sequence of fundamental-domain indices its
// forward images visit (preperiod then repeating period).
struct ExternalAddress {
  std::vector<int> preperiod;
  std::vector<int> period;

  int digit(std::size_t k) const;
  bool constant() const;
  void validate() const;

  // "p:0,1" (periodic), optionally "2,1;p:0" with a preperiod prefix.
  static ExternalAddress parse(const std::string& text);
  std::string str() const;
};

struct RaySample {
  double t;  // potential
  BigPoint point;
  int address_digit;
};

struct LandingResult {
  bool landed = false;
  FixedPointInfo fp;  // meaningful when landed
  int pullbacks = 0;
  double last_gap = 0.0;
  double prev_gap = 0.0;
  std::string diagnostic;
};

// One inverse branch of f into the given fundamental domain, polished by a
// damped root-finder on f(z) = w. Supported for ExpShift/ExpAffine/Cosine.
cplx inverse_branch(const LogDynamics& ld, cplx w, int digit);

// gamma(t_base + level) on the ray: seeds with the family's asymptotic form
// once the potential chain exceeds 50 and pulls back through the address
// digits. Samples sharing t_base satisfy the functional equation exactly.
BigPoint ray_point(const LogDynamics& ld, const ExternalAddress& addr, double t_base,
                   int level);

std::vector<RaySample> trace_ray(const LogDynamics& ld, const ExternalAddress& addr,
                                 double t_start, double t_end, int samples);

// Pulls gamma(1) back by f^period repeatedly; Landed once consecutive
// pullbacks contract below 1e-12 and the limit polishes to a periodic point.
LandingResult land_ray(const LogDynamics& ld, const ExternalAddress& addr, int max_pullbacks);

// True iff every traced sample and its first 20 forward ray images stay in
// the address's fundamental domain with modulus >= R, and each sample
// certifies Escaping. Requires a constant address.
bool hair_confinement_check(const LogDynamics& ld, const ExternalAddress& addr, double t_lo,
                            double t_hi, int samples, double R);

}  // namespace eldyn
