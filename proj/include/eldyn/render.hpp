#pragma once

#include <string>
#include <vector>

#include "eldyn/orbit_engine.hpp"

namespace eldyn {

// Square-pixel view spanning [Re(center) - width, Re(center) + width] on the
// real axis (width is the half-extent); pixels_y fixes the vertical span.
struct Viewport {
  cplx center;
  double width = 0.0;
  int pixels_x = 0;
  int pixels_y = 0;

  static Viewport square(cplx center, double width, int pixels);

  double pixel_size() const { return 2.0 * width / pixels_x; }
  // Row-major, top-to-bottom: (0, 0) is the upper-left pixel.
  cplx pixel_center(int ix, int iy) const;
  // Nearest pixel to z (ties toward the lower index); false when out of view.
  bool pixel_of(cplx z, int* ix, int* iy) const;
};

struct ClassifiedImage {
  Viewport vp;
  int n_max = 0;
  std::vector<int> escape_n;           // -1 = NonEscaping, else certification step
  std::vector<unsigned char> overlay;  // nonzero = marked

  int index(int ix, int iy) const { return iy * vp.pixels_x + ix; }
};

// Per-pixel-center escape-time classification: Escaping(n) at the first step
// whose modulus exceeds the bailout radius, NonEscaping if the orbit stays
// below it for n_max steps. `render` distributes rows across OpenMP workers;
// the serial variant is the reference implementation and must produce
// identical output.
ClassifiedImage render(const EntireMap& map, const Viewport& vp, int n_max,
                       double bailout = 50.0);
ClassifiedImage render_serial(const EntireMap& map, const Viewport& vp, int n_max,
                              double bailout = 50.0);

// Marks the pixels hit by the first n_orbit forward images (starting with the
// singular values themselves) of every singular value inside the viewport.
ClassifiedImage overlay_singular_orbit(const EntireMap& map, ClassifiedImage img, int n_orbit);

// Binary P6: "P6\n<w> <h>\n255\n" then RGB triples. Overlay black; NonEscaping
// white; Escaping(n) gray with g = 255 * min(1, n / n_max) on all channels.
void write_ppm(const ClassifiedImage& img, const std::string& path);
std::vector<unsigned char> ppm_bytes(const ClassifiedImage& img);

// Mean wrapped argument increment of the orbit of z0 around `center`, as a
// fraction of a full turn reduced mod 1. Estimates the Siegel rotation number.
double estimate_rotation_number(const EntireMap& map, cplx center, cplx z0, int n_steps);

}  // namespace eldyn
