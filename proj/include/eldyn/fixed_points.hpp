#pragma once

#include <vector>

#include "eldyn/map_models.hpp"

namespace eldyn {

enum class Stability { Attracting, Repelling, ParabolicCandidate, IrrationallyIndifferent };

const char* stability_name(Stability s);

struct FixedPointInfo {
  cplx point;
  int period = 1;
  cplx multiplier;
  Stability stability = Stability::Repelling;
  int parabolic_q = 0;           // smallest q <= 64 with m^q near 1 (parabolic case)
  double rotation_number = 0.0;  // arg(m)/2pi mod 1 (irrationally indifferent case)
};

struct SearchBox {
  double x0, x1, y0, y1;
};

// Polishes z to a period-point of f^period (residual < 1e-10) and classifies
// it by its chain-rule multiplier. Throws NotPeriodic when polishing fails.
// Thresholds: |m| beyond 1 +/- 1e-9 is repelling/attracting; on the unit
// circle, ParabolicCandidate(q) if m^q is within 1e-6 of 1 for some q <= 64,
// else IrrationallyIndifferent.
FixedPointInfo classify(const EntireMap& map, cplx z, int period);

// Newton searches from grid x grid seeds in the box; deduplicates within
// 1e-9; returns classified points sorted by (Re, Im). Not exhaustive - these
// maps have infinitely many periodic points outside any box.
std::vector<FixedPointInfo> find_fixed_points(const EntireMap& map, int period,
                                              const SearchBox& box, int grid);

// Continued-fraction partial quotients of theta in (0,1), up to `depth`
// (fewer when theta is rational to working precision).
std::vector<long long> rotation_number_cf(double theta, int depth);

}  // namespace eldyn
