#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "eldyn/render.hpp"

using namespace eldyn;

namespace {

const cplx kLambda = std::polar(1.0, kTwoPi * 0.6180339887498949);

}  // namespace

TEST_CASE("viewport geometry") {
  Viewport vp = Viewport::square({0.0, 0.0}, 8.0, 400);
  CHECK(vp.pixel_size() == doctest::Approx(0.04));
  CHECK(vp.pixel_center(0, 0).real() == doctest::Approx(-7.98));
  CHECK(vp.pixel_center(0, 0).imag() == doctest::Approx(7.98));
  for (int i = 0; i < 50; ++i) {
    int ix = static_cast<int>(uniform(21, i, 0, 0.0, 399.999));
    int iy = static_cast<int>(uniform(21, i, 1, 0.0, 399.999));
    int jx, jy;
    REQUIRE(vp.pixel_of(vp.pixel_center(ix, iy), &jx, &jy));
    CHECK(jx == ix);
    CHECK(jy == iy);
  }
  int ix, iy;
  CHECK(!vp.pixel_of({9.0, 0.0}, &ix, &iy));
  CHECK_THROWS_AS(Viewport::square({0.0, 0.0}, -1.0, 10), std::invalid_argument);
}

TEST_CASE("overlay tie-break goes to the lower index") {
  Viewport vp = Viewport::square({0.0, 0.0}, 1.0, 2);  // centers (+-0.5, +-0.5)
  int ix, iy;
  REQUIRE(vp.pixel_of({0.0, 0.0}, &ix, &iy));  // equidistant from all four
  CHECK(ix == 0);
  CHECK(iy == 0);
}

TEST_CASE("ppm byte contract") {
  ClassifiedImage img;
  img.vp = Viewport::square({0.0, 0.0}, 0.5, 1);
  img.n_max = 10;
  img.escape_n = {-1};
  img.overlay = {0};
  std::vector<unsigned char> want = {'P', '6', '\n', '1', ' ', '1', '\n',
                                     '2', '5', '5', '\n', 255, 255, 255};
  CHECK(ppm_bytes(img) == want);

  img.overlay = {1};
  auto b = ppm_bytes(img);
  CHECK(std::vector<unsigned char>(b.end() - 3, b.end()) ==
        std::vector<unsigned char>{0, 0, 0});

  ClassifiedImage two;
  two.vp = {{0.0, 0.0}, 1.0, 2, 1};
  two.n_max = 10;
  two.escape_n = {10, -1};  // full-ramp gray == white, then white
  two.overlay = {0, 0};
  b = ppm_bytes(two);
  CHECK(std::vector<unsigned char>(b.end() - 6, b.end()) ==
        std::vector<unsigned char>(6, 255));

  two.escape_n = {5, -1};  // half ramp: round(255 * 0.5) = 128
  b = ppm_bytes(two);
  CHECK(b[b.size() - 6] == 128);
}

TEST_CASE("render: parallel equals serial, deterministic, expected verdicts") {
  EntireMap m = EntireMap::exp_affine(kLambda);
  Viewport vp = Viewport::square({0.0, 0.0}, 8.0, 60);
  ClassifiedImage par = render(m, vp, 400);
  ClassifiedImage ser = render_serial(m, vp, 400);
  CHECK(par.escape_n == ser.escape_n);
  CHECK(ppm_bytes(par) == ppm_bytes(render(m, vp, 400)));

  int ix, iy;
  REQUIRE(vp.pixel_of({0.0, 0.0}, &ix, &iy));
  CHECK(par.escape_n[par.index(ix, iy)] == -1);  // Siegel center
  REQUIRE(vp.pixel_of({5.0, 0.0}, &ix, &iy));
  CHECK(par.escape_n[par.index(ix, iy)] >= 0);  // deep tract
}

TEST_CASE("cosine pixel regression") {
  EntireMap m = EntireMap::cosine({1.0, 0.0}, {1.0, 0.0});
  Viewport vp = Viewport::square({0.0, 0.0}, 5.0, 101);
  ClassifiedImage img = render(m, vp, 1000);
  int ix, iy;
  REQUIRE(vp.pixel_of({0.0, 0.5 * kPi}, &ix, &iy));
  // orbit pi/2 i -> 0 -> 2 -> 7.52 -> 1844: bailout at step 4 (frozen verdict)
  CHECK(img.escape_n[img.index(ix, iy)] == 4);
}

TEST_CASE("singular-orbit overlay") {
  EntireMap m = EntireMap::exp_affine(kLambda);
  Viewport vp = Viewport::square({0.0, 0.0}, 8.0, 100);
  ClassifiedImage img = render(m, vp, 1000);

  // n_orbit = 1 marks exactly the singular values in view
  ClassifiedImage one = overlay_singular_orbit(m, img, 1);
  int marked = 0;
  for (auto v : one.overlay) marked += v;
  CHECK(marked == 1);  // the asymptotic value -lambda
  int ix, iy;
  REQUIRE(vp.pixel_of(-kLambda, &ix, &iy));
  CHECK(one.overlay[one.index(ix, iy)] == 1);

  // the singular orbit accumulates on the (bounded) Siegel boundary: every
  // marked pixel is non-escaping or touches a non-escaping pixel
  ClassifiedImage full = overlay_singular_orbit(m, img, 2000);
  for (int y = 0; y < 100; ++y)
    for (int x = 0; x < 100; ++x) {
      if (!full.overlay[full.index(x, y)]) continue;
      bool near_bounded = false;
      for (int dy = -1; dy <= 1 && !near_bounded; ++dy)
        for (int dx = -1; dx <= 1 && !near_bounded; ++dx) {
          int nx = x + dx, ny = y + dy;
          if (nx < 0 || nx >= 100 || ny < 0 || ny >= 100) continue;
          near_bounded = full.escape_n[full.index(nx, ny)] < 0;
        }
      CHECK(near_bounded);
    }

  // far-away viewport: empty mask
  ClassifiedImage far = overlay_singular_orbit(
      m, render(m, Viewport::square({1000.0, 1000.0}, 1.0, 10), 50), 100);
  for (auto v : far.overlay) CHECK(v == 0);
}

TEST_CASE("rotation number estimate at the Siegel point") {
  EntireMap m = EntireMap::exp_affine(kLambda);
  double th = estimate_rotation_number(m, {0.0, 0.0}, {0.01, 0.0}, 20000);
  CHECK(th == doctest::Approx(0.6180339887498949).epsilon(1e-6));
}

TEST_CASE("write_ppm round trip") {
  ClassifiedImage img;
  img.vp = Viewport::square({0.0, 0.0}, 0.5, 1);
  img.n_max = 10;
  img.escape_n = {-1};
  img.overlay = {0};
  const char* path = "test_roundtrip.ppm";
  write_ppm(img, path);
  std::FILE* f = std::fopen(path, "rb");
  REQUIRE(f);
  unsigned char buf[32];
  size_t n = std::fread(buf, 1, sizeof buf, f);
  std::fclose(f);
  std::remove(path);
  CHECK(std::vector<unsigned char>(buf, buf + n) == ppm_bytes(img));
}
