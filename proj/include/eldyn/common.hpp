#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace eldyn {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Numerical failures map to CLI exit code 2; usage errors to 1.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoCutRay : NumericError { using NumericError::NumericError; };
struct NotInTract : NumericError { using NumericError::NumericError; };
struct NotInDomain : NumericError { using NumericError::NumericError; };
struct OutsideDomain : NumericError { using NumericError::NumericError; };
struct NoThreshold : NumericError { using NumericError::NumericError; };
struct NoWitness : NumericError { using NumericError::NumericError; };
struct EmptyShell : NumericError { using NumericError::NumericError; };
struct PullbackDivergence : NumericError { using NumericError::NumericError; };
struct AddressInfeasible : NumericError { using NumericError::NumericError; };
struct NotPeriodic : NumericError { using NumericError::NumericError; };
struct RepresentationOverflow : NumericError { using NumericError::NumericError; };

// Counter-based RNG so that parallel sweeps are deterministic: the value for
// sample i depends only on (seed, i), never on thread scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double uniform01(std::uint64_t seed, std::uint64_t idx, std::uint64_t lane = 0) {
  std::uint64_t h = splitmix64(seed ^ splitmix64(idx ^ splitmix64(lane + 0x51ed2701)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline double uniform(std::uint64_t seed, std::uint64_t idx, std::uint64_t lane,
                      double lo, double hi) {
  return lo + (hi - lo) * uniform01(seed, idx, lane);
}

}  // namespace eldyn
