#include <chrono>
#include <cstdio>

#include "eldyn/log_dynamics.hpp"
#include "eldyn/render.hpp"

using namespace eldyn;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int pixels = argc > 1 ? std::atoi(argv[1]) : 200;
  int nmax = argc > 2 ? std::atoi(argv[2]) : 2000;
  std::int64_t samples = argc > 3 ? std::atoll(argv[3]) : 2000000;

  cplx lam = std::polar(1.0, kTwoPi * 0.6180339887498949);
  EntireMap m = EntireMap::exp_affine(lam);
  Viewport vp = Viewport::square({0.0, 0.0}, 8.0, pixels);

  std::printf("render %dx%d nmax=%d\n", pixels, pixels, nmax);
  auto t0 = std::chrono::steady_clock::now();
  ClassifiedImage serial = render_serial(m, vp, nmax);
  double ts = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  ClassifiedImage parallel = render(m, vp, nmax);
  double tp = seconds_since(t0);
  std::printf("  serial   %8.3f s\n  parallel %8.3f s  speedup %.2fx  identical=%s\n", ts, tp,
              ts / tp, serial.escape_n == parallel.escape_n ? "yes" : "NO");

  LogDynamics ld(m);
  std::printf("expansion sweep, %lld samples\n", static_cast<long long>(samples));
  t0 = std::chrono::steady_clock::now();
  ExpansionReport rs = ld.verify_expansion_serial(samples, 7);
  ts = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  ExpansionReport rp = ld.verify_expansion(samples, 7);
  tp = seconds_since(t0);
  bool same = rs.samples == rp.samples && rs.violations == rp.violations &&
              rs.min_margin == rp.min_margin;
  std::printf("  serial   %8.3f s\n  parallel %8.3f s  speedup %.2fx  identical=%s\n", ts, tp,
              ts / tp, same ? "yes" : "NO");
  std::printf("  violations=%lld min_margin=%.6g\n", static_cast<long long>(rp.violations),
              rp.min_margin);
  return 0;
}
