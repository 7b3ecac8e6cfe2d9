#include "eldyn/render.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace eldyn {

Viewport Viewport::square(cplx center, double width, int pixels) {
  if (!(width > 0.0)) throw std::invalid_argument("viewport width must be positive");
  if (pixels < 1) throw std::invalid_argument("viewport needs at least one pixel");
  return {center, width, pixels, pixels};
}

cplx Viewport::pixel_center(int ix, int iy) const {
  double px = pixel_size();
  double x0 = center.real() - width;
  double y_top = center.imag() + 0.5 * px * pixels_y;
  return {x0 + (ix + 0.5) * px, y_top - (iy + 0.5) * px};
}

namespace {

// Nearest-center cell index for coordinate u in units of the pixel size; on
// the exact boundary both neighbors are equidistant and the lower index wins.
int nearest_cell(double u) {
  double f = std::floor(u);
  int k = static_cast<int>(f);
  if (u == f && k > 0) --k;
  return k;
}

}  // namespace

bool Viewport::pixel_of(cplx z, int* ix, int* iy) const {
  double px = pixel_size();
  double x0 = center.real() - width;
  double y_top = center.imag() + 0.5 * px * pixels_y;
  double u = (z.real() - x0) / px;
  double v = (y_top - z.imag()) / px;
  if (!(u >= 0.0) || !(v >= 0.0) || u > pixels_x || v > pixels_y) return false;
  int cx = nearest_cell(u), cy = nearest_cell(v);
  if (cx < 0 || cx >= pixels_x || cy < 0 || cy >= pixels_y) return false;
  *ix = cx;
  *iy = cy;
  return true;
}

namespace {

// exp(x + iy) without the edge-case handling of the library complex exp;
// inputs here are bailout-bounded, so overflow at most produces inf (benign).
inline cplx fast_exp(double x, double y) {
#if defined(__GNUC__) && defined(__linux__)
  double s, c;
  ::sincos(y, &s, &c);
#else
  double s = std::sin(y), c = std::cos(y);
#endif
  double ex = std::exp(x);
  return {ex * c, ex * s};
}

template <class Step>
int escape_loop(Step f, cplx z, int n_max, double bail2) {
  for (int n = 0; n <= n_max; ++n) {
    if (!(std::norm(z) <= bail2)) return n;  // NaN-safe: non-finite escapes
    z = f(z);
  }
  return -1;
}

// First step whose modulus exceeds the bailout radius; -1 if none within
// n_max. The per-family kernels below avoid the complex-exp library call in
// the render hot loop; overflow is benign (inf/NaN iterates count as escaped).
int escape_time(const EntireMap& map, cplx z, int n_max, double bail2) {
  const cplx p = map.param(), q = map.param2();
  switch (map.family()) {
    case Family::ExpAffine:
      return escape_loop(
          [p](cplx z) { return p * (fast_exp(z.real(), z.imag()) - 1.0); }, z, n_max, bail2);
    case Family::ExpShift:
      return escape_loop([p](cplx z) { return fast_exp(z.real(), z.imag()) + p; }, z, n_max,
                         bail2);
    case Family::Cosine:
      return escape_loop(
          [p, q](cplx z) {
            cplx e = fast_exp(z.real(), z.imag());
            return p * e + q / e;
          },
          z, n_max, bail2);
    case Family::Sine:
      return escape_loop(
          [p](cplx z) {
            return p * cplx(std::sin(z.real()) * std::cosh(z.imag()),
                            std::cos(z.real()) * std::sinh(z.imag()));
          },
          z, n_max, bail2);
    case Family::ZExp:
      return escape_loop([](cplx z) { return z * fast_exp(z.real(), z.imag()); }, z, n_max,
                         bail2);
    default:
      return escape_loop([&map](cplx z) { return map.evaluate(z); }, z, n_max, bail2);
  }
}

ClassifiedImage render_impl(const EntireMap& map, const Viewport& vp, int n_max,
                            double bailout, bool parallel) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  if (!(bailout > 0.0)) throw std::invalid_argument("bailout must be positive");
  if (vp.pixels_x < 1 || vp.pixels_y < 1 || !(vp.width > 0.0))
    throw std::invalid_argument("invalid viewport");
  const double bail2 = bailout * bailout;
  ClassifiedImage img;
  img.vp = vp;
  img.n_max = n_max;
  img.escape_n.assign(static_cast<size_t>(vp.pixels_x) * vp.pixels_y, -1);
  img.overlay.assign(img.escape_n.size(), 0);
  auto row = [&](int iy) {
    for (int ix = 0; ix < vp.pixels_x; ++ix)
      img.escape_n[static_cast<size_t>(img.index(ix, iy))] =
          escape_time(map, vp.pixel_center(ix, iy), n_max, bail2);
  };
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (int iy = 0; iy < vp.pixels_y; ++iy) row(iy);
  } else {
    for (int iy = 0; iy < vp.pixels_y; ++iy) row(iy);
  }
  return img;
}

}  // namespace

ClassifiedImage render(const EntireMap& map, const Viewport& vp, int n_max, double bailout) {
  return render_impl(map, vp, n_max, bailout, true);
}

ClassifiedImage render_serial(const EntireMap& map, const Viewport& vp, int n_max,
                              double bailout) {
  return render_impl(map, vp, n_max, bailout, false);
}

ClassifiedImage overlay_singular_orbit(const EntireMap& map, ClassifiedImage img, int n_orbit) {
  if (n_orbit < 1) throw std::invalid_argument("n_orbit must be at least 1");
  for (const SingularValue& sv : map.singular_values().values) {
    cplx z = sv.point;
    for (int k = 0; k < n_orbit; ++k) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) break;
      int ix, iy;
      if (img.vp.pixel_of(z, &ix, &iy))
        img.overlay[static_cast<size_t>(img.index(ix, iy))] = 1;
      if (std::abs(z) > 1e10) break;  // left the view for good
      z = map.evaluate(z);
    }
  }
  return img;
}

std::vector<unsigned char> ppm_bytes(const ClassifiedImage& img) {
  char header[64];
  int hn = std::snprintf(header, sizeof header, "P6\n%d %d\n255\n", img.vp.pixels_x,
                         img.vp.pixels_y);
  std::vector<unsigned char> out(header, header + hn);
  out.reserve(out.size() + img.escape_n.size() * 3);
  for (size_t i = 0; i < img.escape_n.size(); ++i) {
    unsigned char g;
    if (img.overlay[i]) {
      g = 0;
    } else if (img.escape_n[i] < 0) {
      g = 255;
    } else {
      double ramp = std::min(1.0, static_cast<double>(img.escape_n[i]) / img.n_max);
      g = static_cast<unsigned char>(std::lround(255.0 * ramp));
    }
    out.push_back(g);
    out.push_back(g);
    out.push_back(g);
  }
  return out;
}

void write_ppm(const ClassifiedImage& img, const std::string& path) {
  std::vector<unsigned char> bytes = ppm_bytes(img);
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  size_t n = std::fwrite(bytes.data(), 1, bytes.size(), f);
  if (std::fclose(f) != 0 || n != bytes.size())
    throw std::runtime_error("short write to " + path);
}

double estimate_rotation_number(const EntireMap& map, cplx center, cplx z0, int n_steps) {
  if (n_steps < 1) throw std::invalid_argument("n_steps must be at least 1");
  cplx z = z0;
  double prev = std::arg(z - center);
  double total = 0.0;
  for (int k = 0; k < n_steps; ++k) {
    z = map.evaluate(z);
    cplx rel = z - center;
    if (!std::isfinite(rel.real()) || !std::isfinite(rel.imag()) || rel == 0.0)
      throw NumericError("rotation estimate: orbit left the punctured neighborhood");
    double a = std::arg(rel);
    total += std::remainder(a - prev, kTwoPi);
    prev = a;
  }
  double theta = total / (kTwoPi * n_steps);
  return theta - std::floor(theta);
}

}  // namespace eldyn
