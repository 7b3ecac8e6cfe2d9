#include "eldyn/orbit_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eldyn {

namespace {

constexpr double kLogSwitch = 34.538776394910684;  // log(1e15)
const double kNaN = std::numeric_limits<double>::quiet_NaN();

// True when evaluate(z) cannot overflow for this family.
bool eval_safe(const EntireMap& map, cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  switch (map.family()) {
    case Family::ExpAffine:
    case Family::ExpShift:
      return z.real() <= 700.0;
    case Family::Sine:
      return std::abs(z.imag()) <= 700.0;
    case Family::Cosine:
      return std::abs(z.real()) <= 700.0;
    case Family::ZExp:
    case Family::PetalExp:
      return z.real() <= 700.0 && z.real() + std::log(std::abs(z) + 1.0) <= 705.0;
  }
  return false;
}

}  // namespace

BigPoint BigPoint::from_value(const LogDynamics& ld, cplx z) {
  BigPoint p;
  if (std::abs(z) <= kSwitchModulus) {
    p.is_log_ = false;
    p.value_ = z;
  } else {
    p.is_log_ = true;
    cplx zeta = std::log(z);
    p.logp_ = {zeta, ld.strip_of_im(zeta.imag())};
  }
  return p;
}

BigPoint BigPoint::from_log(const LogDynamics& ld, const LogPoint& q) {
  BigPoint p;
  if (q.zeta.real() <= kLogSwitch) return from_value(ld, std::exp(q.zeta));
  p.is_log_ = true;
  p.logp_ = q;
  return p;
}

cplx BigPoint::value() const {
  if (is_log_) throw NumericError("BigPoint: direct value requested from log representation");
  return value_;
}

const LogPoint& BigPoint::logp() const {
  if (!is_log_) throw NumericError("BigPoint: log point requested from direct representation");
  return logp_;
}

double BigPoint::log_modulus() const {
  return is_log_ ? logp_.zeta.real() : std::log(std::abs(value_));
}

BigPoint step(const LogDynamics& ld, const BigPoint& p) {
  cplx z;
  if (p.is_log()) {
    if (p.logp().zeta.real() > 709.0)
      throw RepresentationOverflow("orbit point exceeds the log-coordinate range");
    z = std::exp(p.logp().zeta);
  } else {
    z = p.value();
  }
  if (eval_safe(ld.map(), z)) {
    cplx w = ld.map().evaluate(z);
    if (std::isfinite(w.real()) && std::isfinite(w.imag()))
      return BigPoint::from_value(ld, w);
  }
  // The image overflows the direct representation, hence |f(z)| > K and the
  // log lift applies.
  return BigPoint::from_log(ld, ld.lift_image(z));
}

namespace {

struct DomainResolution {
  enum Kind { Label, None, Far } kind;
  int label = 0;
};

DomainResolution resolve_domain(const LogDynamics& ld, const BigPoint& p) {
  try {
    if (!p.is_log()) return {DomainResolution::Label, ld.domain_index(p.value())};
    if (p.logp().zeta.real() <= 40.0)
      return {DomainResolution::Label, ld.domain_index(p.logp())};
  } catch (const NumericError&) {
    return {DomainResolution::None, 0};
  }
  return {DomainResolution::Far, 0};
}

double orbit_r(const LogDynamics& ld, const BigPoint& p) {
  try {
    return p.is_log() ? ld.size_r(p.logp()) : ld.size_r(p.value());
  } catch (const NumericError&) {
    return kNaN;
  }
}

}  // namespace

OrbitRecord classify_growth(const LogDynamics& ld, const std::set<int>& allowed, double R,
                            const BigPoint& z0, int n_max) {
  OrbitRecord rec;
  const double logR = std::log(R);
  BigPoint p = z0;
  int streak = 0;
  double prev_r = kNaN;
  for (int m = 0; m <= n_max; ++m) {
    rec.points.push_back(p);
    double r = orbit_r(ld, p);
    rec.r_values.push_back(r);
    if (p.log_modulus() < logR) {
      rec.classification = OrbitClass::LeftDomains;
      rec.n_exit = m;
      return rec;
    }
    DomainResolution dom = resolve_domain(ld, p);
    if (dom.kind == DomainResolution::Label) {
      if (rec.domains_visited.empty() || rec.domains_visited.back() != dom.label)
        rec.domains_visited.push_back(dom.label);
      if (!allowed.empty() && !allowed.count(dom.label)) {
        rec.classification = OrbitClass::LeftDomains;
        rec.n_exit = m;
        return rec;
      }
    } else if (dom.kind == DomainResolution::None) {
      if (!allowed.empty()) {
        rec.classification = OrbitClass::LeftDomains;
        rec.n_exit = m;
        return rec;
      }
    } else if (!allowed.empty()) {
      // Strip labels are below double resolution this far out; require only
      // tract consistency with some allowed domain.
      bool ok = false;
      for (int d : allowed)
        if (ld.domain_matches(p.logp(), d)) {
          ok = true;
          break;
        }
      if (!ok) {
        rec.classification = OrbitClass::LeftDomains;
        rec.n_exit = m;
        return rec;
      }
    }
    if (!std::isnan(r) && !std::isnan(prev_r) && r >= 2.0 * prev_r * (1.0 - 1e-12)) {
      if (++streak >= 20) {
        rec.classification = OrbitClass::Escaping;
        rec.n_detect = m - 20;
        return rec;
      }
    } else {
      streak = 0;
    }
    prev_r = r;
    if (m == n_max) break;
    try {
      p = step(ld, p);
    } catch (const RepresentationOverflow&) {
      rec.classification = OrbitClass::Escaping;
      rec.n_detect = m;
      rec.escaped_by_overflow = true;
      return rec;
    }
  }
  rec.classification = OrbitClass::Undecided;
  return rec;
}

namespace {

cplx hair_embed(int axis, double x, double y) {
  switch (axis) {
    case 0: return {x, y};
    case 1: return {y, x};
    case 2: return {-x, y};
    default: return {y, -x};
  }
}

}  // namespace

BigPoint rprime_probe(const LogDynamics& ld, int domain, double log_rho, std::uint64_t seed,
                      std::uint64_t idx) {
  double j = uniform(seed, idx, 21, -1.0, 1.0);
  double c = ld.hair_center(domain);
  if (log_rho <= 34.0) {
    double rho = std::exp(log_rho);
    // Transverse placement with the hair's own e^{-|z|} decay: any larger
    // offset visibly leaves the strip after one application of f.
    double y = c + (c + j) * std::exp(-rho);
    double x = std::sqrt(std::max(rho * rho - y * y, 1e-12));
    return BigPoint::from_value(ld, hair_embed(ld.hair_axis_quadrant(domain), x, y));
  }
  return BigPoint::from_log(ld, ld.hair_log_point(domain, log_rho, c + j));
}

double estimate_Rprime(const LogDynamics& ld, const std::set<int>& allowed, double R,
                       int probes, int n_max, std::uint64_t seed) {
  if (!(R > ld.K())) throw std::invalid_argument("estimate_Rprime requires R > K");
  std::vector<int> doms(allowed.begin(), allowed.end());
  if (doms.empty()) doms.push_back(0);
  std::uint64_t k = 0;
  for (double lr = std::log(R); lr <= 700.0; lr += std::log(2.0), ++k) {
    bool all = true;
    for (int i = 0; i < probes && all; ++i) {
      BigPoint p = rprime_probe(ld, doms[i % doms.size()], lr, seed, k * 100003 + i);
      if (classify_growth(ld, allowed, R, p, n_max).classification != OrbitClass::Escaping)
        all = false;
    }
    if (all) return std::exp(lr);
  }
  throw NoWitness("no escape witness radius below the representation cap");
}

ShellReport extendability_probe(const EntireMap& map, const std::vector<cplx>& samples,
                                const std::vector<double>& radii) {
  for (size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1]))
      throw std::invalid_argument("extendability_probe: radii must be strictly increasing");
  ShellReport rep;
  for (double T : radii) {
    double best = std::numeric_limits<double>::infinity();
    bool seen = false;
    for (cplx z : samples) {
      if (std::abs(z) < T) continue;
      seen = true;
      best = std::min(best, std::abs(map.evaluate(z)));
    }
    if (!seen) throw EmptyShell("no samples at modulus >= requested radius");
    rep.radii.push_back(T);
    rep.min_modulus.push_back(best);
  }
  return rep;
}

int classify_escape(const LogDynamics& ld, cplx z0, int n_max) {
  BigPoint p = BigPoint::from_value(ld, z0);
  int streak = 0;
  double prev_r = kNaN;
  for (int m = 0; m <= n_max; ++m) {
    double r = kNaN;
    if (p.log_modulus() > ld.logK()) r = orbit_r(ld, p);
    if (!std::isnan(r) && !std::isnan(prev_r) && r >= 2.0 * prev_r * (1.0 - 1e-12)) {
      if (++streak >= 20) return m;
    } else {
      streak = 0;
    }
    prev_r = r;
    if (m == n_max) break;
    try {
      p = step(ld, p);
    } catch (const RepresentationOverflow&) {
      return m;
    }
  }
  return -1;
}

}  // namespace eldyn
