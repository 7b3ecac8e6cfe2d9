#pragma once

#include <optional>
#include <set>
#include <vector>

#include "eldyn/log_dynamics.hpp"

namespace eldyn {

// Hybrid orbit point: moderate values as plain complex numbers, larger ones
// as logarithmic coordinates. The switch sits well below the double range so
// the correction terms of the log lift stay exact.
class BigPoint {
 public:
  static constexpr double kSwitchModulus = 1e15;

  static BigPoint from_value(const LogDynamics& ld, cplx z);
  static BigPoint from_log(const LogDynamics& ld, const LogPoint& p);

  bool is_log() const { return is_log_; }
  cplx value() const;
  const LogPoint& logp() const;
  double log_modulus() const;  // log |z| in either representation

 private:
  bool is_log_ = false;
  cplx value_{};
  LogPoint logp_{};
};

// One application of f. Throws RepresentationOverflow once even the log
// coordinate leaves double range; callers treat that as escape by fiat.
BigPoint step(const LogDynamics& ld, const BigPoint& p);

enum class OrbitClass { Escaping, LeftDomains, Undecided };

struct OrbitRecord {
  std::vector<BigPoint> points;
  std::vector<double> r_values;  // NaN where r is undefined at that step
  std::vector<int> domains_visited;
  OrbitClass classification = OrbitClass::Undecided;
  int n_detect = -1;  // Escaping: start of the certified doubling run
  int n_exit = -1;    // LeftDomains: first offending step
  bool escaped_by_overflow = false;
};

// Escape test within prescribed fundamental domains: Escaping once r(z)
// doubles for 20 consecutive steps (or the representation overflows) while
// the modulus stays >= R; LeftDomains at the first step below R or outside
// `allowed` (empty set = all domains); Undecided after n_max steps.
OrbitRecord classify_growth(const LogDynamics& ld, const std::set<int>& allowed, double R,
                            const BigPoint& z0, int n_max);

// Smallest radius on the geometric grid R, 2R, 4R, ... (capped at the e^700
// scale) at which all probe points sampled in the allowed domains classify
// Escaping. Throws NoWitness at the cap.
double estimate_Rprime(const LogDynamics& ld, const std::set<int>& allowed, double R,
                       int probes, int n_max = 300, std::uint64_t seed = 11);

// Probe point of `domain` near the hair centerline at log-modulus log_rho
// (the transverse offset shrinks like e^-|z| so that early forward images
// stay strip-consistent, as on a true hair).
BigPoint rprime_probe(const LogDynamics& ld, int domain, double log_rho,
                      std::uint64_t seed, std::uint64_t idx);

struct ShellReport {
  std::vector<double> radii;
  std::vector<double> min_modulus;  // min |f(z)| over samples with |z| >= radius
};

// Numeric surrogate for extendability: the sample set "looks extendable" if
// the reported minima grow without bound. Throws EmptyShell if a shell holds
// no samples; radii must be strictly increasing.
ShellReport extendability_probe(const EntireMap& map, const std::vector<cplx>& samples,
                                const std::vector<double>& radii);

// Render-facing classification: step at which escape was certified
// (r-doubling run of 20 or representation overflow), or -1 if the orbit
// stayed unresolved for n_max steps.
int classify_escape(const LogDynamics& ld, cplx z0, int n_max);

}  // namespace eldyn
