#pragma once

#include <cstdint>
#include <optional>

#include "eldyn/map_models.hpp"

namespace eldyn {

// Axis ray used as the cut curve gamma: it starts on {|z| = K} and runs to
// infinity outside every tract, so its preimage slices tracts into
// fundamental domains.
enum class CutDirection { NegX, PosImag, NegImag, PosX };

struct CutCurve {
  CutDirection dir;
  double K;  // base point is K * unit(dir)

  cplx unit() const;
  cplx point_at(double s) const;  // s >= 0, |point| = K + s
  // True if z lies on the ray within `tol` (used for the "on gamma" tests).
  bool contains(cplx z, double tol) const;
};

// Logarithmic coordinate: z = exp(zeta). strip identifies the fundamental
// strip of H = {Re > log K} containing zeta, per the lifted cut curve.
struct LogPoint {
  cplx zeta;
  int strip = 0;
};

// First axis ray (checked in order -x, +iy, -iy, +x) whose samples and
// asymptotic bound both stay inside {|f| <= K}. Throws NoCutRay.
CutCurve choose_cut_curve(const EntireMap& map);

struct ExpansionReport {
  std::int64_t samples = 0;
  std::int64_t violations = 0;
  double min_margin = 0.0;  // min over samples of |Phi'| - (1/4pi)(Re Phi - log K)
};

// Per-map tract geometry: the bound K, the audited cut curve and the base
// point anchors. Computed once, immutable afterwards; sweeps over it may be
// partitioned across threads freely.
class LogDynamics {
 public:
  explicit LogDynamics(const EntireMap& map);

  const EntireMap& map() const { return map_; }
  double K() const { return K_; }
  double logK() const { return logK_; }
  const CutCurve& cut() const { return cut_; }

  bool in_tract(cplx z) const;
  bool in_tract(const LogPoint& p) const;

  // Fundamental-domain label of z. For maps with two tracts (Sine, Cosine)
  // the (tract, strip) pair is flattened as 2*strip + tract, tract 0 being
  // the one reached for Re z -> +inf (resp. upper half plane for Sine).
  int domain_index(cplx z) const;
  int domain_index(const LogPoint& p) const;

  // Whether p is consistent with carrying the given fundamental-domain label.
  // Far out (Re zeta > 40) the strip part of the label is below a double's
  // angular resolution, so only the tract part is checked there.
  bool domain_matches(const LogPoint& p, int domain) const;

  // Fundamental strip of H containing imaginary part `im`, and its vertical
  // center, both determined by the lifted cut curve.
  int strip_of_im(double im) const;
  double strip_center(int strip) const;

  // Base point anchor of a strip: Re = 16*pi + log K + 1, centered
  // vertically (nudged by 0.1 if it would hit the lifted cut).
  cplx base_point(int strip) const;
  double base_re() const { return base_re_; }

  // Logarithmic lift: exp(phi(p)) = f(exp(p)), imaginary part normalized to
  // the strip matching the fundamental domain of exp(p).
  LogPoint phi(const LogPoint& p) const;

  // Log-coordinate of f(z) for |z|-moderate z in a tract (strip-normalized
  // like phi). Splitting it out keeps orbit stepping free of exp/log
  // round-trips.
  LogPoint lift_image(cplx z) const;

  double size_r(cplx z) const;
  double size_r(const LogPoint& p) const;

  ExpansionReport verify_expansion(std::int64_t sample_count, std::uint64_t seed) const;
  ExpansionReport verify_expansion_serial(std::int64_t sample_count, std::uint64_t seed) const;

  // Smallest threshold C on a geometric grid (factor 1.1 up to r_max) such
  // that sampled points of the given fundamental domain with r in [C, r_max]
  // all satisfy r(f(z)) >= 2 r(z).
  double find_cf(int domain, double r_max, std::uint64_t seed = 7) const;

  // One doubling audit: r(f(z)) and r(z) for a log-coordinate sample.
  // Returns false if the sample is unusable (outside domain/tract).
  bool doubling_sample(const LogPoint& p, int domain, double* r_before, double* r_after) const;

  // Sample a point of `domain` with r in [r_lo, r_hi]; nullopt if the
  // attempt landed outside the domain (caller retries with a new index).
  std::optional<LogPoint> sample_domain_point(int domain, double r_lo, double r_hi,
                                              std::uint64_t seed, std::uint64_t idx) const;

  // Sample a point of `domain` at modulus exp(log_rho) (hair-transverse when
  // the radius is far out); nullopt on a miss.
  std::optional<LogPoint> sample_domain_point_at_log_radius(int domain, double log_rho,
                                                            std::uint64_t seed,
                                                            std::uint64_t idx) const;

  // Asymptotic hair frame of a fundamental domain: the quadrant of the
  // outward axis (0..3, times pi/2 gives the direction) and the transverse
  // coordinate of the strip's center line.
  int hair_axis_quadrant(int domain) const;
  double hair_center(int domain) const;
  // Log-coordinate of the point at log-modulus log_rho with the given
  // absolute transverse coordinate on that frame.
  LogPoint hair_log_point(int domain, double log_rho, double transverse) const;

 private:
  ExpansionReport verify_expansion_impl(std::int64_t sample_count, std::uint64_t seed,
                                        bool parallel) const;
  std::optional<cplx> sample_tract_zeta(std::uint64_t seed, std::uint64_t idx) const;
  CutCurve choose_cut_curve_() const;

  EntireMap map_;
  double K_;
  double logK_;
  CutCurve cut_;
  double base_re_;
};

}  // namespace eldyn
