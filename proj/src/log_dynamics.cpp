#include "eldyn/log_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eldyn {

namespace {

double cut_angle(CutDirection d) {
  switch (d) {
    case CutDirection::NegX: return kPi;
    case CutDirection::PosImag: return 0.5 * kPi;
    case CutDirection::NegImag: return 1.5 * kPi;
    case CutDirection::PosX: return kTwoPi;
  }
  return kPi;
}

// Label of the half-open interval (b + 2pi(k-1), b + 2pi k] containing v,
// where b is `boundary` reduced into (0, 2pi]. With boundary = pi this is the
// classical floor((v + pi) / 2pi).
int label_mod2pi(double v, double boundary) {
  double b = boundary - kTwoPi * std::floor(boundary / kTwoPi);
  if (b <= 0.0) b = kTwoPi;
  double raw = std::ceil((v - b) / kTwoPi);
  if (!(raw > -2.0e9)) return -2000000000;
  if (!(raw < 2.0e9)) return 2000000000;
  return static_cast<int>(raw);
}

double interval_center(int k, double boundary) {
  double b = boundary - kTwoPi * std::floor(boundary / kTwoPi);
  if (b <= 0.0) b = kTwoPi;
  return b - kPi + kTwoPi * k;
}

// log(1 + w) accurate for small |w|.
cplx log1p_c(cplx w) {
  double m = std::abs(w);
  if (m < 1e-4) return w * (1.0 - w * (0.5 - w / 3.0));
  return std::log(1.0 + w);
}

// Asymptotic sup of |f| along the axis ray (from |z| = K outward), or nullopt
// when |f| is unbounded there. Complements the finite-radius sample audit.
std::optional<double> ray_sup_bound(const EntireMap& map, CutDirection dir, double K) {
  cplx p = map.param(), q = map.param2();
  double decay = std::exp(-K);
  switch (map.family()) {
    case Family::ExpShift:
      switch (dir) {
        case CutDirection::NegX: return std::abs(p) + decay;
        case CutDirection::PosImag:
        case CutDirection::NegImag: return std::abs(p) + 1.0;
        case CutDirection::PosX: return std::nullopt;
      }
      break;
    case Family::ExpAffine:
      switch (dir) {
        case CutDirection::NegX: return std::abs(p) * (1.0 + decay);
        case CutDirection::PosImag:
        case CutDirection::NegImag: return 2.0 * std::abs(p);
        case CutDirection::PosX: return std::nullopt;
      }
      break;
    case Family::Sine:
      // |sin| <= 1 on the real axis, unbounded vertically.
      if (dir == CutDirection::NegX || dir == CutDirection::PosX) return std::abs(p);
      return std::nullopt;
    case Family::Cosine:
      if (dir == CutDirection::PosImag || dir == CutDirection::NegImag)
        return std::abs(p) + std::abs(q);
      return std::nullopt;
    case Family::ZExp:
      // |x exp(x)| decreasing for x < -1; K >= 1 + 1/e > 1.
      if (dir == CutDirection::NegX) return K * decay;
      return std::nullopt;
    case Family::PetalExp:
      if (dir == CutDirection::NegX) return 0.25 * (1.0 + (K + 1.0) * decay);
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

cplx CutCurve::unit() const {
  switch (dir) {
    case CutDirection::NegX: return {-1.0, 0.0};
    case CutDirection::PosImag: return {0.0, 1.0};
    case CutDirection::NegImag: return {0.0, -1.0};
    case CutDirection::PosX: return {1.0, 0.0};
  }
  return {-1.0, 0.0};
}

cplx CutCurve::point_at(double s) const { return (K + s) * unit(); }

bool CutCurve::contains(cplx z, double tol) const {
  double x = z.real(), y = z.imag();
  switch (dir) {
    case CutDirection::NegX: return std::abs(y) <= tol && x <= -K + tol;
    case CutDirection::PosX: return std::abs(y) <= tol && x >= K - tol;
    case CutDirection::PosImag: return std::abs(x) <= tol && y >= K - tol;
    case CutDirection::NegImag: return std::abs(x) <= tol && y <= -K + tol;
  }
  return false;
}

CutCurve choose_cut_curve(const EntireMap& map) {
  const double K = map.bound_K();
  const CutDirection order[] = {CutDirection::NegX, CutDirection::PosImag,
                                CutDirection::NegImag, CutDirection::PosX};
  for (CutDirection dir : order) {
    auto bound = ray_sup_bound(map, dir, K);
    if (!bound || *bound > K * (1.0 + 1e-12)) continue;
    CutCurve cand{dir, K};
    bool ok = true;
    // Geometric samples from |z| = K out to 1e10; the asymptotic bound above
    // covers the tail.
    for (int i = 0; i < 200 && ok; ++i) {
      double rad = K * std::pow(1e10 / K, i / 199.0);
      cplx z = rad * cand.unit();
      double fm = std::abs(map.evaluate(z));
      if (!(fm <= K * (1.0 + 1e-12))) ok = false;
    }
    if (ok) return cand;
  }
  throw NoCutRay("no axis ray avoids every tract for " + map.descriptor());
}

LogDynamics::LogDynamics(const EntireMap& map)
    : map_(map),
      K_(map.bound_K()),
      logK_(std::log(map.bound_K())),
      cut_(choose_cut_curve(map)),
      base_re_(16.0 * kPi + std::log(map.bound_K()) + 1.0) {}

CutCurve LogDynamics::choose_cut_curve_() const { return choose_cut_curve(map_); }

bool LogDynamics::in_tract(cplx z) const { return std::abs(map_.evaluate(z)) > K_; }

bool LogDynamics::in_tract(const LogPoint& p) const {
  if (p.zeta.real() <= 709.0) return in_tract(std::exp(p.zeta));
  // exp(zeta) is not representable; decide from the dominant term.
  double c = std::cos(p.zeta.imag());
  double s = std::sin(p.zeta.imag());
  switch (map_.family()) {
    case Family::ExpAffine:
    case Family::ExpShift:
    case Family::ZExp:
    case Family::PetalExp:
      return c > 0.0;
    case Family::Cosine:
      return c != 0.0;
    case Family::Sine:
      return s != 0.0;
  }
  return false;
}

int LogDynamics::strip_of_im(double im) const { return label_mod2pi(im, cut_angle(cut_.dir)); }

double LogDynamics::strip_center(int strip) const {
  return interval_center(strip, cut_angle(cut_.dir));
}

cplx LogDynamics::base_point(int strip) const {
  double c = strip_center(strip);
  // Keep the anchor off the lifted cut (Im == cut angle mod 2pi). The center
  // sits at distance pi from it, so the nudge only fires defensively.
  double a = cut_angle(cut_.dir);
  double d = std::remainder(c - a, kTwoPi);
  if (std::abs(d) < 1e-9) c += 0.1;
  return {base_re_, c};
}

namespace {

// Fundamental-domain labeling. Domain boundaries are the preimage curves of
// the cut; asymptotically they straighten to lines {v == beta mod 2pi} in the
// relevant coordinate, and the labels below use that straightened model.
struct DomainModel {
  const EntireMap& map;
  const CutCurve& cut;

  int label(cplx z) const {
    double alpha = cut_angle(cut.dir);
    switch (map.family()) {
      case Family::ExpAffine:
      case Family::ExpShift:
      case Family::ZExp:
      case Family::PetalExp:
        return label_mod2pi(z.imag(), alpha);
      case Family::Sine: {
        int t = z.imag() >= 0.0 ? 0 : 1;
        double argl = std::arg(map.param());
        double beta = t == 0 ? argl + alpha - 1.5 * kPi : 1.5 * kPi - argl + alpha - kPi;
        long long s = label_mod2pi(z.real(), beta);
        return static_cast<int>(std::clamp<long long>(2 * s + t, -2000000000, 2000000000));
      }
      case Family::Cosine: {
        int t = z.real() >= 0.0 ? 0 : 1;
        double beta = t == 0 ? alpha - std::arg(map.param()) : std::arg(map.param2()) - alpha;
        long long s = label_mod2pi(z.imag(), beta);
        return static_cast<int>(std::clamp<long long>(2 * s + t, -2000000000, 2000000000));
      }
    }
    return 0;
  }

  bool two_tracts() const {
    return map.family() == Family::Sine || map.family() == Family::Cosine;
  }

  int strip_part(int flat) const {
    if (!two_tracts()) return flat;
    int t = ((flat % 2) + 2) % 2;
    return (flat - t) / 2;
  }
};

}  // namespace

int LogDynamics::domain_index(cplx z) const {
  if (!in_tract(z))
    throw NotInDomain("point is not in any tract");
  cplx fz = map_.evaluate(z);
  if (cut_.contains(fz, 1e-9))
    throw NotInDomain("image lies on the cut curve");
  return DomainModel{map_, cut_}.label(z);
}

int LogDynamics::domain_index(const LogPoint& p) const {
  if (p.zeta.real() <= 709.0) return domain_index(std::exp(p.zeta));
  if (!in_tract(p)) throw NotInDomain("point is not in any tract");
  double re = p.zeta.real();
  double c = std::cos(p.zeta.imag());
  double s = std::sin(p.zeta.imag());
  auto scaled = [re](double trig) -> double {
    if (trig == 0.0) return 0.0;
    double lg = re + std::log(std::abs(trig));
    double m = lg > 709.0 ? std::numeric_limits<double>::infinity() : std::exp(lg);
    return trig > 0.0 ? m : -m;
  };
  return DomainModel{map_, cut_}.label(cplx(scaled(c), scaled(s)));
}

namespace {

// Stable log f(z) for z in a tract. Uses direct evaluation while safe and the
// dominant-exponential form with a log1p correction once exp would overflow.
cplx log_f_value(const EntireMap& map, cplx z) {
  cplx p = map.param(), q = map.param2();
  switch (map.family()) {
    case Family::ExpShift:
      if (z.real() > 600.0) return z + log1p_c(p * std::exp(-z));
      return std::log(map.evaluate(z));
    case Family::ExpAffine:
      if (z.real() > 600.0) return std::log(p) + z + log1p_c(-std::exp(-z));
      return std::log(map.evaluate(z));
    case Family::Sine: {
      const cplx i(0.0, 1.0);
      if (z.imag() > 600.0)
        return std::log(0.5 * i * p) - i * z + log1p_c(-std::exp(2.0 * i * z));
      if (z.imag() < -600.0)
        return std::log(-0.5 * i * p) + i * z + log1p_c(-std::exp(-2.0 * i * z));
      return std::log(map.evaluate(z));
    }
    case Family::Cosine:
      if (z.real() > 600.0) return std::log(p) + z + log1p_c((q / p) * std::exp(-2.0 * z));
      if (z.real() < -600.0) return std::log(q) - z + log1p_c((p / q) * std::exp(2.0 * z));
      return std::log(map.evaluate(z));
    case Family::ZExp:
      return std::log(z) + z;
    case Family::PetalExp: {
      cplx lz1 = std::log(z + 1.0);
      if (z.real() > 40.0) return z + lz1 + std::log(cplx(0.25)) + log1p_c(-std::exp(-z - lz1));
      return std::log(map.evaluate(z));
    }
  }
  return std::log(map.evaluate(z));
}

}  // namespace

LogPoint LogDynamics::phi(const LogPoint& p) const {
  if (p.zeta.real() > 709.0)
    throw RepresentationOverflow("log-coordinate too large to lift");
  cplx z = std::exp(p.zeta);
  if (!in_tract(z)) throw NotInTract("exp(zeta) is not in a tract");
  return lift_image(z);
}

LogPoint LogDynamics::lift_image(cplx z) const {
  if (!in_tract(z)) throw NotInTract("point is not in a tract");
  cplx w = log_f_value(map_, z);
  DomainModel dm{map_, cut_};
  int target = dm.strip_part(dm.label(z));
  double im = w.imag();
  if (std::abs(im) < 1e15) {
    int cur = strip_of_im(im);
    w = {w.real(), im + kTwoPi * (double(target) - double(cur))};
    return {w, target};
  }
  return {w, strip_of_im(im)};
}

double LogDynamics::size_r(cplx z) const {
  double m = std::abs(z);
  if (!(m > K_)) throw OutsideDomain("modulus does not exceed K");
  if (cut_.contains(z, 1e-9)) throw OutsideDomain("point lies on the cut curve");
  cplx zeta = std::log(z);
  return std::abs(zeta - base_point(strip_of_im(zeta.imag())));
}

double LogDynamics::size_r(const LogPoint& p) const {
  if (!(p.zeta.real() > logK_)) throw OutsideDomain("modulus does not exceed K");
  if (p.zeta.real() <= 709.0 && cut_.contains(std::exp(p.zeta), 1e-9))
    throw OutsideDomain("point lies on the cut curve");
  return std::abs(p.zeta - base_point(strip_of_im(p.zeta.imag())));
}

std::optional<cplx> LogDynamics::sample_tract_zeta(std::uint64_t seed, std::uint64_t idx) const {
  double re = uniform(seed, idx, 0, -2.0, logK_ + 4.0);
  double im = uniform(seed, idx, 1, -kPi, kPi);
  cplx zeta(re, im);
  if (!in_tract(std::exp(zeta))) return std::nullopt;
  return zeta;
}

ExpansionReport LogDynamics::verify_expansion_impl(std::int64_t sample_count,
                                                   std::uint64_t seed, bool parallel) const {
  ExpansionReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  struct Cell {
    bool valid = false;
    bool violation = false;
    double margin = 0.0;
  };
  std::int64_t next_idx = 0;
  const std::int64_t idx_cap = sample_count * 200 + 1000;
  while (rep.samples < sample_count && next_idx < idx_cap) {
    std::int64_t chunk = std::max<std::int64_t>(64, 2 * (sample_count - rep.samples));
    chunk = std::min(chunk, idx_cap - next_idx);
    std::vector<Cell> cells(static_cast<size_t>(chunk));
    auto eval_one = [&](std::int64_t j) {
      auto z_opt = sample_tract_zeta(seed, static_cast<std::uint64_t>(next_idx + j));
      Cell& c = cells[static_cast<size_t>(j)];
      if (!z_opt) return;
      cplx zeta = *z_opt;
      cplx z = std::exp(zeta);
      cplx fz = map_.evaluate(z);
      double lf = std::log(std::abs(fz));
      double dphi = std::abs(map_.derivative(z) * z / fz);
      double rhs = (lf - logK_) / (4.0 * kPi);
      c.valid = true;
      c.margin = dphi - rhs;
      c.violation = dphi < rhs * (1.0 - 1e-12);
    };
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
      for (std::int64_t j = 0; j < chunk; ++j) eval_one(j);
    } else {
      for (std::int64_t j = 0; j < chunk; ++j) eval_one(j);
    }
    for (std::int64_t j = 0; j < chunk && rep.samples < sample_count; ++j) {
      const Cell& c = cells[static_cast<size_t>(j)];
      if (!c.valid) continue;
      ++rep.samples;
      if (c.violation) ++rep.violations;
      rep.min_margin = std::min(rep.min_margin, c.margin);
    }
    next_idx += chunk;
  }
  if (rep.samples == 0) rep.min_margin = 0.0;
  return rep;
}

ExpansionReport LogDynamics::verify_expansion(std::int64_t n, std::uint64_t seed) const {
  return verify_expansion_impl(n, seed, true);
}

ExpansionReport LogDynamics::verify_expansion_serial(std::int64_t n, std::uint64_t seed) const {
  return verify_expansion_impl(n, seed, false);
}

namespace {

// Asymptotic direction of the hairs of a tract: 0 for right/+x, 1 for +iy,
// 2 for -x, 3 for -iy (times pi/2 gives the angle).
int hair_axis(Family fam, int tract) {
  switch (fam) {
    case Family::ExpAffine:
    case Family::ExpShift:
    case Family::ZExp:
    case Family::PetalExp:
      return 0;
    case Family::Cosine:
      return tract == 0 ? 0 : 2;
    case Family::Sine:
      return tract == 0 ? 1 : 3;
  }
  return 0;
}

// Asymptotic transverse boundary coordinate of the fundamental strips within
// a tract (matches the labels in DomainModel).
double strip_boundary_coord(const EntireMap& map, const CutCurve& cut, int tract) {
  double alpha = cut_angle(cut.dir);
  switch (map.family()) {
    case Family::ExpAffine:
      // lambda e^z lands on the cut when Im z == alpha - arg(lambda) mod 2pi.
      return alpha - std::arg(map.param());
    case Family::ExpShift:
    case Family::ZExp:
    case Family::PetalExp:
      return alpha;
    case Family::Sine: {
      double argl = std::arg(map.param());
      return tract == 0 ? argl + alpha - 1.5 * kPi : 1.5 * kPi - argl + alpha - kPi;
    }
    case Family::Cosine:
      return tract == 0 ? alpha - std::arg(map.param()) : std::arg(map.param2()) - alpha;
  }
  return alpha;
}

// Log-coordinate of a point at log-modulus rho near the transverse coordinate
// c of the hair axis of `tract`.
cplx hair_zeta(Family fam, int tract, double rho, double c) {
  int axis = hair_axis(fam, tract);
  double mag = std::exp(std::min(rho, 700.0));
  double off = std::abs(c) >= mag ? 0.0 : c / mag;
  double sgn = (axis == 1 || axis == 2) ? -1.0 : 1.0;
  double im = std::remainder(0.5 * kPi * axis + sgn * off, kTwoPi);
  return {rho, im};
}

}  // namespace

int LogDynamics::hair_axis_quadrant(int domain) const {
  DomainModel dm{map_, cut_};
  int tract = dm.two_tracts() ? ((domain % 2) + 2) % 2 : 0;
  return hair_axis(map_.family(), tract);
}

double LogDynamics::hair_center(int domain) const {
  DomainModel dm{map_, cut_};
  int tract = dm.two_tracts() ? ((domain % 2) + 2) % 2 : 0;
  return interval_center(dm.strip_part(domain), strip_boundary_coord(map_, cut_, tract));
}

LogPoint LogDynamics::hair_log_point(int domain, double log_rho, double transverse) const {
  DomainModel dm{map_, cut_};
  int tract = dm.two_tracts() ? ((domain % 2) + 2) % 2 : 0;
  cplx zeta = hair_zeta(map_.family(), tract, log_rho, transverse);
  return {zeta, strip_of_im(zeta.imag())};
}

bool LogDynamics::domain_matches(const LogPoint& p, int domain) const {
  // Beyond this radius the angular resolution of a double can no longer
  // separate neighboring fundamental strips of the same tract, so only the
  // tract part is verifiable; the strip part is the caller's bookkeeping.
  if (p.zeta.real() > 40.0) {
    if (!in_tract(p)) return false;
    if (!DomainModel{map_, cut_}.two_tracts()) return true;
    int want = ((domain % 2) + 2) % 2;
    int have;
    if (map_.family() == Family::Cosine)
      have = std::cos(p.zeta.imag()) >= 0.0 ? 0 : 1;
    else
      have = std::sin(p.zeta.imag()) >= 0.0 ? 0 : 1;
    return want == have;
  }
  try {
    return domain_index(p) == domain;
  } catch (const NumericError&) {
    return false;
  }
}

std::optional<LogPoint> LogDynamics::sample_domain_point(int domain, double r_lo, double r_hi,
                                                         std::uint64_t seed,
                                                         std::uint64_t idx) const {
  DomainModel dm{map_, cut_};
  double mode = uniform01(seed, idx, 10);
  cplx zeta;
  if (mode < 0.4) {
    // 2-d sample of the inner part of the tract (moderate modulus).
    double rho = uniform(seed, idx, 11, logK_ + 1e-3, std::min(base_re_, logK_ + 8.0));
    double th = uniform(seed, idx, 12, -kPi, kPi);
    zeta = {rho, th};
    if (!in_tract(std::exp(zeta))) return std::nullopt;
  } else {
    // Transverse neighborhood of a hair of the requested domain, far out.
    int tract = dm.two_tracts() ? ((domain % 2) + 2) % 2 : 0;
    int strip = dm.strip_part(domain);
    double u = uniform(seed, idx, 13, std::max(0.0, r_lo - 4.0), r_hi);
    double beta = strip_boundary_coord(map_, cut_, tract);
    double c = interval_center(strip, beta) + uniform(seed, idx, 14, -2.5, 2.5);
    zeta = hair_zeta(map_.family(), tract, base_re_ + u, c);
  }
  LogPoint p{zeta, strip_of_im(zeta.imag())};
  try {
    if (!domain_matches(p, domain)) return std::nullopt;
    double r = size_r(p);
    if (r < r_lo || r > r_hi) return std::nullopt;
  } catch (const NumericError&) {
    return std::nullopt;
  }
  return p;
}

std::optional<LogPoint> LogDynamics::sample_domain_point_at_log_radius(
    int domain, double log_rho, std::uint64_t seed, std::uint64_t idx) const {
  DomainModel dm{map_, cut_};
  int tract = dm.two_tracts() ? ((domain % 2) + 2) % 2 : 0;
  int strip = dm.strip_part(domain);
  double beta = strip_boundary_coord(map_, cut_, tract);
  double c = interval_center(strip, beta) + uniform(seed, idx, 15, -2.5, 2.5);
  cplx zeta = hair_zeta(map_.family(), tract, log_rho, c);
  LogPoint p{zeta, strip_of_im(zeta.imag())};
  try {
    if (!domain_matches(p, domain)) return std::nullopt;
  } catch (const NumericError&) {
    return std::nullopt;
  }
  return p;
}

bool LogDynamics::doubling_sample(const LogPoint& p, int domain, double* r_before,
                                  double* r_after) const {
  try {
    if (!domain_matches(p, domain)) return false;
    *r_before = size_r(p);
    LogPoint im = phi(p);
    *r_after = size_r(im);
  } catch (const NumericError&) {
    return false;
  }
  return true;
}

double LogDynamics::find_cf(int domain, double r_max, std::uint64_t seed) const {
  const int kSamples = 500;
  std::uint64_t salt = 0;
  for (double c = 1.0; c <= r_max; c *= 1.1, ++salt) {
    bool all_double = true;
    int got = 0;
    for (std::uint64_t idx = 0; idx < 60000 && got < kSamples && all_double; ++idx) {
      auto p = sample_domain_point(domain, c, r_max, seed + salt * 0x9e37, idx);
      if (!p) continue;
      double rb = 0.0, ra = 0.0;
      if (!doubling_sample(*p, domain, &rb, &ra)) continue;
      ++got;
      if (ra < 2.0 * rb * (1.0 - 1e-12)) all_double = false;
    }
    if (all_double && got > 0) return c;
  }
  throw NoThreshold("no doubling threshold found below r_max");
}

}  // namespace eldyn
