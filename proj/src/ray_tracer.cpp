#include "eldyn/ray_tracer.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace eldyn {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

bool invertible_family(Family f) {
  return f == Family::ExpShift || f == Family::ExpAffine || f == Family::Cosine;
}

void require_invertible(const EntireMap& map) {
  if (!invertible_family(map.family()))
    throw AddressInfeasible("no closed-form inverse branches for " + map.descriptor());
}

std::vector<int> parse_digit_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    int d = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad address digit: " + item);
    out.push_back(d);
  }
  return out;
}

std::string join_digits(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

int ExternalAddress::digit(std::size_t k) const {
  if (k < preperiod.size()) return preperiod[k];
  return period[(k - preperiod.size()) % period.size()];
}

bool ExternalAddress::constant() const {
  if (!preperiod.empty() || period.empty()) return false;
  for (int d : period)
    if (d != period.front()) return false;
  return true;
}

void ExternalAddress::validate() const {
  if (period.empty()) throw std::invalid_argument("address needs a nonempty period");
  if (preperiod.size() > 64 || period.size() > 64)
    throw std::invalid_argument("address too long");
  auto check = [](int d) {
    // The seed geometry places points at modulus >= twice the transverse
    // center, which must stay well inside the exp-representable range.
    if (d < -50 || d > 50) throw std::invalid_argument("address digit out of range [-50, 50]");
  };
  for (int d : preperiod) check(d);
  for (int d : period) check(d);
}

ExternalAddress ExternalAddress::parse(const std::string& text) {
  ExternalAddress a;
  std::string pre, per = text;
  size_t pos = text.find("p:");
  if (pos != std::string::npos) {
    per = text.substr(pos + 2);
    pre = text.substr(0, pos);
    if (!pre.empty() && (pre.back() == ';' || pre.back() == ',')) pre.pop_back();
  }
  try {
    if (!pre.empty()) a.preperiod = parse_digit_list(pre);
    a.period = parse_digit_list(per);
  } catch (const std::exception&) {
    throw std::invalid_argument("unparseable address: " + text);
  }
  a.validate();
  return a;
}

std::string ExternalAddress::str() const {
  std::string out;
  if (!preperiod.empty()) out = join_digits(preperiod) + ";";
  return out + "p:" + join_digits(period);
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

// Point at modulus `pos` on the centerline of the domain's hair frame.
// Requires pos well above |center|; overflow-safe for pos near 1e300.
cplx direct_seed(const LogDynamics& ld, int domain, double pos) {
  double c = ld.hair_center(domain);
  double ratio = c / pos;
  double x = pos * std::sqrt(std::max(1.0 - ratio * ratio, 1e-30));
  return hair_embed(ld.hair_axis_quadrant(domain), x, c);
}

cplx polish_preimage(const EntireMap& map, cplx z, cplx w) {
  const double tol = 1e-13 * (1.0 + std::abs(w));
  cplx fz = map.evaluate(z);
  double res = std::abs(fz - w);
  for (int it = 0; it < 40 && res > tol; ++it) {
    cplx dp = map.derivative(z);
    if (std::abs(dp) < 1e-300)
      throw PullbackDivergence("inverse branch ran into a critical point");
    cplx dz = (fz - w) / dp;
    cplx cand = z - dz;
    cplx fc = map.evaluate(cand);
    int halvings = 0;
    while ((!std::isfinite(fc.real()) || !std::isfinite(fc.imag()) || std::abs(fc - w) > res) &&
           halvings < 12) {
      dz *= 0.5;
      cand = z - dz;
      fc = map.evaluate(cand);
      ++halvings;
    }
    double nres = std::abs(fc - w);
    if (!(nres < res)) break;
    z = cand;
    fz = fc;
    res = nres;
  }
  if (!(res <= 1e-9 * (1.0 + std::abs(w))))
    throw PullbackDivergence("inverse-branch polish did not converge");
  return z;
}

}  // namespace

cplx inverse_branch(const LogDynamics& ld, cplx w, int digit) {
  const EntireMap& map = ld.map();
  require_invertible(map);
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
    throw PullbackDivergence("pullback target is not finite");
  cplx z;
  switch (map.family()) {
    case Family::ExpShift: {
      cplx u = w - map.param();
      if (u == 0.0) throw AddressInfeasible("pullback target equals the asymptotic value");
      z = std::log(u);
      z += cplx(0.0, kTwoPi * (digit - ld.strip_of_im(z.imag())));
      break;
    }
    case Family::ExpAffine: {
      cplx u = w / map.param() + 1.0;
      if (u == 0.0) throw AddressInfeasible("pullback target equals the asymptotic value");
      z = std::log(u);
      z += cplx(0.0, kTwoPi * (digit - ld.strip_of_im(z.imag())));
      break;
    }
    case Family::Cosine: {
      int tract = ((digit % 2) + 2) % 2;
      int strip = (digit - tract) / 2;
      cplx a = map.param(), b = map.param2();
      cplx E;
      if (std::abs(w) > 1e100) {
        // Dominant-root asymptotics; the discriminant form would overflow.
        E = tract == 0 ? w / a : b / w;
      } else {
        cplx disc = std::sqrt(w * w - 4.0 * a * b);
        if (std::real(std::conj(w) * disc) < 0.0) disc = -disc;
        cplx num = w + disc;  // cancellation-free numerator of the big root
        if (num == 0.0) throw AddressInfeasible("pullback target has no tract preimage");
        E = tract == 0 ? num / (2.0 * a) : 2.0 * b / num;
      }
      if (E == 0.0) throw AddressInfeasible("no preimage in the requested tract");
      z = std::log(E);
      double c0 = ld.hair_center(tract);  // strip-0 centerline of this tract
      int cur = static_cast<int>(std::ceil((z.imag() - c0 - kPi) / kTwoPi));
      z += cplx(0.0, kTwoPi * (strip - cur));
      break;
    }
    default:
      throw AddressInfeasible("unsupported family");
  }
  return polish_preimage(map, z, w);
}

BigPoint ray_point(const LogDynamics& ld, const ExternalAddress& addr, double t_base,
                   int level) {
  addr.validate();
  require_invertible(ld.map());
  if (!std::isfinite(t_base)) throw std::invalid_argument("ray potential must be finite");
  if (level < 0) throw std::invalid_argument("ray level must be nonnegative");

  double cmax = 0.0;
  for (int d : addr.preperiod) cmax = std::max(cmax, std::abs(ld.hair_center(d)));
  for (int d : addr.period) cmax = std::max(cmax, std::abs(ld.hair_center(d)));
  // Seed once the potential chain clears both the asymptotic regime and the
  // transverse centers; the bound on digits keeps exp(threshold) finite.
  const double threshold = std::max(50.0, 2.0 * cmax + 10.0);

  std::vector<double> v{t_base};
  while (v.back() < threshold) v.push_back(std::exp(v.back()));
  const int n_seed = static_cast<int>(v.size()) - 1;

  if (level >= n_seed) {
    double pos = v[n_seed];
    double logpos = n_seed > 0 ? v[n_seed - 1] : std::log(pos);
    for (int j = n_seed; j < level; ++j) {
      double nl = pos;
      pos = pos > 709.0 ? kInf : std::exp(pos);
      logpos = nl;
    }
    int d = addr.digit(static_cast<size_t>(level));
    if (pos <= BigPoint::kSwitchModulus)
      return BigPoint::from_value(ld, direct_seed(ld, d, pos));
    double lr = std::isfinite(pos) ? std::log(pos) : (std::isfinite(logpos) ? logpos : 1e300);
    return BigPoint::from_log(ld, ld.hair_log_point(d, lr, ld.hair_center(d)));
  }

  cplx w = direct_seed(ld, addr.digit(static_cast<size_t>(n_seed)), v[n_seed]);
  for (int j = n_seed - 1; j >= level; --j)
    w = inverse_branch(ld, w, addr.digit(static_cast<size_t>(j)));
  return BigPoint::from_value(ld, w);
}

std::vector<RaySample> trace_ray(const LogDynamics& ld, const ExternalAddress& addr,
                                 double t_start, double t_end, int samples) {
  addr.validate();
  require_invertible(ld.map());
  if (samples < 2) throw std::invalid_argument("trace_ray needs at least 2 samples");
  if (!(t_end > t_start) || !std::isfinite(t_start) || !std::isfinite(t_end))
    throw std::invalid_argument("trace_ray needs a finite potential range");
  std::vector<RaySample> out;
  out.reserve(static_cast<size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    double t = t_start + (t_end - t_start) * i / (samples - 1);
    out.push_back({t, ray_point(ld, addr, t, 0), addr.digit(0)});
  }
  return out;
}

LandingResult land_ray(const LogDynamics& ld, const ExternalAddress& addr, int max_pullbacks) {
  addr.validate();
  require_invertible(ld.map());
  if (!addr.preperiod.empty())
    throw std::invalid_argument("land_ray requires a purely periodic address");
  if (max_pullbacks < 1) throw std::invalid_argument("max_pullbacks must be positive");
  LandingResult res;
  res.last_gap = kInf;
  res.prev_gap = kInf;
  const int n = static_cast<int>(addr.period.size());
  try {
    cplx z = ray_point(ld, addr, 1.0, 0).value();
    for (int it = 1; it <= max_pullbacks; ++it) {
      cplx zn = z;
      for (int k = n - 1; k >= 0; --k) zn = inverse_branch(ld, zn, addr.period[k]);
      res.prev_gap = res.last_gap;
      res.last_gap = std::abs(zn - z);
      res.pullbacks = it;
      z = zn;
      if (res.last_gap < 1e-12) {
        res.fp = classify(ld.map(), z, n);
        res.landed = true;
        return res;
      }
    }
    res.diagnostic = "pullbacks did not contract below tolerance";
  } catch (const NumericError& e) {
    res.diagnostic = e.what();
  }
  return res;
}

bool hair_confinement_check(const LogDynamics& ld, const ExternalAddress& addr, double t_lo,
                            double t_hi, int samples, double R) {
  addr.validate();
  require_invertible(ld.map());
  if (!addr.constant())
    throw std::invalid_argument("hair confinement needs a constant address");
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
  if (!(t_hi > t_lo)) throw std::invalid_argument("need t_hi > t_lo");
  if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
  const int d = addr.period[0];
  const double logR = std::log(R);
  for (int i = 0; i < samples; ++i) {
    double t = t_lo + (t_hi - t_lo) * i / (samples - 1);
    for (int k = 0; k <= 20; ++k) {
      BigPoint p = ray_point(ld, addr, t, k);
      if (p.log_modulus() < logR - 1e-9) return false;
      if (p.is_log()) {
        if (!ld.domain_matches(p.logp(), d)) return false;
      } else {
        try {
          if (ld.domain_index(p.value()) != d) return false;
        } catch (const NumericError&) {
          return false;
        }
      }
    }
    OrbitRecord rec = classify_growth(ld, {}, R, ray_point(ld, addr, t, 0), 100);
    if (rec.classification != OrbitClass::Escaping) return false;
  }
  return true;
}

}  // namespace eldyn
