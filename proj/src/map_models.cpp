#include "eldyn/map_models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace eldyn {

const char* family_name(Family f) {
  switch (f) {
    case Family::ExpAffine: return "expaffine";
    case Family::ExpShift: return "expshift";
    case Family::Sine: return "sine";
    case Family::Cosine: return "cosine";
    case Family::ZExp: return "zexp";
    case Family::PetalExp: return "petalexp";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "expaffine") return Family::ExpAffine;
  if (name == "expshift") return Family::ExpShift;
  if (name == "sine") return Family::Sine;
  if (name == "cosine") return Family::Cosine;
  if (name == "zexp") return Family::ZExp;
  if (name == "petalexp") return Family::PetalExp;
  throw std::invalid_argument("unknown family: " + name);
}

namespace {

void require_finite(cplx v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw std::invalid_argument(std::string("parameter not finite: ") + what);
}

}  // namespace

EntireMap::EntireMap(Family f, cplx p, cplx q) : family_(f), p_(p), q_(q) {
  require_finite(p, "p");
  require_finite(q, "q");
  if (f == Family::Cosine && (p == cplx(0.0) || q == cplx(0.0)))
    throw std::invalid_argument(
        "cosine requires a != 0 and b != 0 (use an exponential family instead)");
}

EntireMap EntireMap::exp_affine(cplx lambda) { return {Family::ExpAffine, lambda, {}}; }
EntireMap EntireMap::exp_shift(cplx kappa) { return {Family::ExpShift, kappa, {}}; }
EntireMap EntireMap::sine(cplx lambda) { return {Family::Sine, lambda, {}}; }
EntireMap EntireMap::cosine(cplx a, cplx b) { return {Family::Cosine, a, b}; }
EntireMap EntireMap::zexp() { return {Family::ZExp, {}, {}}; }
EntireMap EntireMap::petal_exp() { return {Family::PetalExp, {}, {}}; }

EntireMap EntireMap::make(Family f, cplx p, cplx q) {
  switch (f) {
    case Family::ExpAffine: return exp_affine(p);
    case Family::ExpShift: return exp_shift(p);
    case Family::Sine: return sine(p);
    case Family::Cosine: return cosine(p, q);
    case Family::ZExp: return zexp();
    case Family::PetalExp: return petal_exp();
  }
  throw std::invalid_argument("bad family");
}

cplx EntireMap::evaluate(cplx z) const {
  switch (family_) {
    case Family::ExpAffine: return p_ * (std::exp(z) - 1.0);
    case Family::ExpShift: return std::exp(z) + p_;
    case Family::Sine: return p_ * std::sin(z);
    case Family::Cosine: return p_ * std::exp(z) + q_ * std::exp(-z);
    case Family::ZExp: return z * std::exp(z);
    case Family::PetalExp: return 0.25 * ((z + 1.0) * std::exp(z) - 1.0);
  }
  return {};
}

cplx EntireMap::derivative(cplx z) const {
  switch (family_) {
    case Family::ExpAffine: return p_ * std::exp(z);
    case Family::ExpShift: return std::exp(z);
    case Family::Sine: return p_ * std::cos(z);
    case Family::Cosine: return p_ * std::exp(z) - q_ * std::exp(-z);
    case Family::ZExp: return (z + 1.0) * std::exp(z);
    case Family::PetalExp: return 0.25 * (z + 2.0) * std::exp(z);
  }
  return {};
}

SingularSet EntireMap::singular_values() const {
  switch (family_) {
    case Family::ExpAffine:
      // f -> -lambda as Re z -> -inf.
      return {{{-p_, SingularKind::Asymptotic}}};
    case Family::ExpShift:
      return {{{p_, SingularKind::Asymptotic}}};
    case Family::Sine:
      // Critical points at cos z = 0, values +/- lambda.
      return {{{p_, SingularKind::Critical}, {-p_, SingularKind::Critical}}};
    case Family::Cosine: {
      // Critical points solve exp(2z) = b/a; values +/- 2 sqrt(ab)
      // (principal branch; both signs emitted, so the branch cut is
      // immaterial).
      cplx cv = 2.0 * std::sqrt(p_ * q_);
      return {{{cv, SingularKind::Critical}, {-cv, SingularKind::Critical}}};
    }
    case Family::ZExp:
      // Critical point z = -1; asymptotic value 0 along the negative reals.
      return {{{cplx(-std::exp(-1.0), 0.0), SingularKind::Critical},
               {cplx(0.0, 0.0), SingularKind::Asymptotic}}};
    case Family::PetalExp:
      // Critical point z = -2; asymptotic value -1/4.
      return {{{evaluate(cplx(-2.0, 0.0)), SingularKind::Critical},
               {cplx(-0.25, 0.0), SingularKind::Asymptotic}}};
  }
  return {};
}

double EntireMap::bound_K() const {
  double m = std::abs(evaluate(cplx(0.0, 0.0)));
  for (const auto& s : singular_values().values) m = std::max(m, std::abs(s.point));
  return 1.0 + m;
}

namespace {

std::string fmt_param(const char* name, cplx v) {
  std::ostringstream os;
  os.precision(17);
  os << name << "=" << v.real() << "," << v.imag();
  return os.str();
}

cplx parse_pair(const std::string& s) {
  std::istringstream is(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(is >> re)) throw std::invalid_argument("bad complex literal: " + s);
  if (is >> comma) {
    if (comma != ',' || !(is >> im))
      throw std::invalid_argument("bad complex literal: " + s);
  }
  return {re, im};
}

}  // namespace

std::string EntireMap::descriptor() const {
  std::string out = std::string("family=") + family_name(family_);
  switch (family_) {
    case Family::ExpAffine:
    case Family::Sine:
      out += " " + fmt_param("lambda", p_);
      break;
    case Family::ExpShift:
      out += " " + fmt_param("kappa", p_);
      break;
    case Family::Cosine:
      out += " " + fmt_param("a", p_) + " " + fmt_param("b", q_);
      break;
    case Family::ZExp:
    case Family::PetalExp:
      break;
  }
  return out;
}

EntireMap EntireMap::from_descriptor(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  std::string fam;
  cplx p, q(1.0, 0.0);
  bool have_p = false, have_q = false;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("bad descriptor token: " + tok);
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "family") {
      fam = val;
    } else if (key == "lambda" || key == "kappa" || key == "a") {
      p = parse_pair(val);
      have_p = true;
    } else if (key == "b") {
      q = parse_pair(val);
      have_q = true;
    } else {
      throw std::invalid_argument("bad descriptor key: " + key);
    }
  }
  if (fam.empty()) throw std::invalid_argument("descriptor missing family");
  Family f = family_from_name(fam);
  if (f == Family::Cosine && (!have_p || !have_q))
    throw std::invalid_argument("cosine descriptor needs a= and b=");
  if ((f == Family::ExpAffine || f == Family::ExpShift || f == Family::Sine) && !have_p)
    throw std::invalid_argument("descriptor missing parameter");
  return make(f, p, q);
}

}  // namespace eldyn
