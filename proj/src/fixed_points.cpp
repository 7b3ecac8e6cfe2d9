#include "eldyn/fixed_points.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "eldyn/common.hpp"

namespace eldyn {

const char* stability_name(Stability s) {
  switch (s) {
    case Stability::Attracting: return "attracting";
    case Stability::Repelling: return "repelling";
    case Stability::ParabolicCandidate: return "parabolic-candidate";
    case Stability::IrrationallyIndifferent: return "irrationally-indifferent";
  }
  return "?";
}

namespace {

struct CycleEval {
  cplx image;       // f^period(z)
  cplx derivative;  // (f^period)'(z) by the chain rule
};

std::optional<CycleEval> eval_cycle(const EntireMap& map, cplx z, int period) {
  cplx w = z, d = 1.0;
  for (int k = 0; k < period; ++k) {
    if (std::abs(w) > 1e8) return std::nullopt;  // iterate left any useful basin
    d *= map.derivative(w);
    w = map.evaluate(w);
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return std::nullopt;
  }
  return CycleEval{w, d};
}

// Damped Newton iteration on f^period(z) - z = 0.
std::optional<cplx> polish(const EntireMap& map, cplx z, int period, double tol, int iters) {
  auto ev = eval_cycle(map, z, period);
  if (!ev) return std::nullopt;
  double res = std::abs(ev->image - z);
  for (int it = 0; it < iters; ++it) {
    if (res < tol) return z;
    cplx g = ev->image - z;
    cplx gp = ev->derivative - 1.0;
    if (std::abs(gp) < 1e-14) return std::nullopt;
    cplx dz = g / gp;
    double cap = 1.0;
    if (std::abs(dz) > cap) dz *= cap / std::abs(dz);
    cplx cand = z - dz;
    auto evc = eval_cycle(map, cand, period);
    int halvings = 0;
    while ((!evc || std::abs(evc->image - cand) > res) && halvings < 10) {
      dz *= 0.5;
      cand = z - dz;
      evc = eval_cycle(map, cand, period);
      ++halvings;
    }
    if (!evc) return std::nullopt;
    double nres = std::abs(evc->image - cand);
    if (nres >= res && res < 1e2 * tol) return res < tol ? std::optional<cplx>(z) : std::nullopt;
    z = cand;
    ev = evc;
    res = nres;
  }
  return res < tol ? std::optional<cplx>(z) : std::nullopt;
}

}  // namespace

FixedPointInfo classify(const EntireMap& map, cplx z, int period) {
  if (period < 1) throw std::invalid_argument("period must be positive");
  auto zp = polish(map, z, period, 1e-10, 60);
  if (!zp) throw NotPeriodic("point did not polish to a periodic point");
  if (std::abs(*zp - z) > 0.05 * (1.0 + std::abs(z)))
    throw NotPeriodic("seed is not near a periodic point");
  auto ev = eval_cycle(map, *zp, period);
  if (!ev || std::abs(ev->image - *zp) > 1e-10)
    throw NotPeriodic("polished point fails the residual check");
  FixedPointInfo info;
  info.point = *zp;
  info.period = period;
  info.multiplier = ev->derivative;
  double mm = std::abs(info.multiplier);
  if (mm > 1.0 + 1e-9) {
    info.stability = Stability::Repelling;
  } else if (mm < 1.0 - 1e-9) {
    info.stability = Stability::Attracting;
  } else {
    cplx pw = 1.0;
    int q_found = 0;
    for (int q = 1; q <= 64 && !q_found; ++q) {
      pw *= info.multiplier;
      if (std::abs(pw - 1.0) < 1e-6) q_found = q;
    }
    if (q_found) {
      info.stability = Stability::ParabolicCandidate;
      info.parabolic_q = q_found;
    } else {
      info.stability = Stability::IrrationallyIndifferent;
      double th = std::arg(info.multiplier) / kTwoPi;
      info.rotation_number = th - std::floor(th);
    }
  }
  return info;
}

std::vector<FixedPointInfo> find_fixed_points(const EntireMap& map, int period,
                                              const SearchBox& box, int grid) {
  if (period < 1 || period > 8) throw std::invalid_argument("period must be in [1, 8]");
  if (grid < 4) throw std::invalid_argument("grid must be at least 4");
  if (!(box.x1 > box.x0) || !(box.y1 > box.y0))
    throw std::invalid_argument("degenerate search box");
  const double dx = (box.x1 - box.x0) / grid;
  const double dy = (box.y1 - box.y0) / grid;
  std::vector<cplx> roots;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      cplx seed(box.x0 + (i + 0.5) * dx, box.y0 + (j + 0.5) * dy);
      auto zp = polish(map, seed, period, 1e-11, 80);
      if (!zp) continue;
      cplx z = *zp;
      if (z.real() < box.x0 - 1e-9 || z.real() > box.x1 + 1e-9 || z.imag() < box.y0 - 1e-9 ||
          z.imag() > box.y1 + 1e-9)
        continue;
      bool dup = false;
      for (cplx r : roots)
        if (std::abs(r - z) < 1e-9) {
          dup = true;
          break;
        }
      if (!dup) roots.push_back(z);
    }
  }
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<FixedPointInfo> out;
  for (cplx z : roots) {
    try {
      out.push_back(classify(map, z, period));
    } catch (const NotPeriodic&) {
    }
  }
  return out;
}

std::vector<long long> rotation_number_cf(double theta, int depth) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0,1)");
  if (depth < 1 || depth > 40) throw std::invalid_argument("depth must lie in [1, 40]");
  std::vector<long long> out;
  double x = theta;
  for (int k = 0; k < depth; ++k) {
    double inv = 1.0 / x;
    double a = std::floor(inv);
    if (a >= 1e15) break;  // rational to working precision
    out.push_back(static_cast<long long>(a));
    x = inv - a;
    if (x < 1e-12) break;
  }
  return out;
}

}  // namespace eldyn
