#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eldyn/fixed_points.hpp"
#include "eldyn/log_dynamics.hpp"
#include "eldyn/map_models.hpp"
#include "eldyn/orbit_engine.hpp"
#include "eldyn/ray_tracer.hpp"
#include "eldyn/render.hpp"

using namespace eldyn;

namespace {

cplx parse_pair(const std::string& text, const char* what) {
  double re, im;
  char tail;
  int got = std::sscanf(text.c_str(), "%lf,%lf%c", &re, &im, &tail);
  if (got != 2) throw std::invalid_argument(std::string(what) + ": expected re,im");
  return {re, im};
}

std::string fmt_cplx(cplx z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g%+gi", z.real(), z.imag());
  return buf;
}

struct MapArgs {
  std::string family;
  std::string param = "0,0";
  std::string param2 = "1,0";

  void attach(CLI::App* cmd) {
    cmd->add_option("--family", family, "expaffine|expshift|sine|cosine|zexp|petalexp")
        ->required();
    cmd->add_option("--param", param, "map parameter as re,im");
    cmd->add_option("--param2", param2, "second parameter (cosine b) as re,im");
  }

  EntireMap build() const {
    return EntireMap::make(family_from_name(family), parse_pair(param, "--param"),
                           parse_pair(param2, "--param2"));
  }

  std::string params_text() const {
    EntireMap m = build();
    if (m.family() == Family::Cosine)
      return "a=" + fmt_cplx(m.param()) + ";b=" + fmt_cplx(m.param2());
    if (m.family() == Family::ZExp || m.family() == Family::PetalExp) return "-";
    return fmt_cplx(m.param());
  }
};

const char* orbit_class_name(OrbitClass c) {
  switch (c) {
    case OrbitClass::Escaping: return "escaping";
    case OrbitClass::LeftDomains: return "left-domains";
    case OrbitClass::Undecided: return "undecided";
  }
  return "?";
}

int run(int argc, char** argv) {
  CLI::App app{"numerics for entire functions of Eremenko-Lyubich class B"};
  app.require_subcommand(1);

  // verify-expansion
  auto* ve = app.add_subcommand("verify-expansion", "audit the log-coordinate expansion bound");
  MapArgs ve_map;
  ve_map.attach(ve);
  std::int64_t ve_samples = 10000;
  std::uint64_t ve_seed = 7;
  ve->add_option("--samples", ve_samples);
  ve->add_option("--seed", ve_seed);

  // find-cf
  auto* fc = app.add_subcommand("find-cf", "doubling threshold of a fundamental domain");
  MapArgs fc_map;
  fc_map.attach(fc);
  int fc_domain = 0;
  double fc_rmax = 200.0;
  std::uint64_t fc_seed = 7;
  fc->add_option("--domain", fc_domain);
  fc->add_option("--rmax", fc_rmax);
  fc->add_option("--seed", fc_seed);

  // classify-orbit
  auto* co = app.add_subcommand("classify-orbit", "escape/exit classification of one orbit");
  MapArgs co_map;
  co_map.attach(co);
  std::string co_z = "0,0";
  double co_radius = 5.0;
  std::vector<int> co_domains;
  int co_nmax = 100000;
  co->add_option("--z", co_z, "starting point re,im");
  co->add_option("--radius", co_radius, "modulus floor R");
  co->add_option("--domains", co_domains, "allowed fundamental domains (empty = all)");
  co->add_option("--nmax", co_nmax);

  // estimate-rprime
  auto* er = app.add_subcommand("estimate-rprime", "escape witness radius");
  MapArgs er_map;
  er_map.attach(er);
  double er_radius = 5.0;
  std::vector<int> er_domains;
  int er_probes = 50, er_nmax = 300;
  std::uint64_t er_seed = 11;
  er->add_option("--radius", er_radius);
  er->add_option("--domains", er_domains);
  er->add_option("--probes", er_probes);
  er->add_option("--nmax", er_nmax);
  er->add_option("--seed", er_seed);

  // trace-ray
  auto* tr = app.add_subcommand("trace-ray", "sample a dynamic ray");
  MapArgs tr_map;
  tr_map.attach(tr);
  std::string tr_addr = "p:0";
  double tr_t0 = 1.0, tr_t1 = 5.0;
  int tr_samples = 50;
  tr->add_option("--address", tr_addr, "external address, e.g. p:0,1");
  tr->add_option("--tstart", tr_t0);
  tr->add_option("--tend", tr_t1);
  tr->add_option("--samples", tr_samples);

  // land-ray
  auto* lr = app.add_subcommand("land-ray", "pull a periodic ray back to its landing point");
  MapArgs lr_map;
  lr_map.attach(lr);
  std::string lr_addr = "p:0";
  int lr_pullbacks = 200;
  lr->add_option("--address", lr_addr);
  lr->add_option("--max-pullbacks", lr_pullbacks);

  // fixed-points
  auto* fp = app.add_subcommand("fixed-points", "periodic points in a box");
  MapArgs fp_map;
  fp_map.attach(fp);
  int fp_period = 1, fp_grid = 16;
  std::vector<double> fp_box = {-3.0, 3.0, -3.0, 3.0};
  fp->add_option("--period", fp_period);
  fp->add_option("--grid", fp_grid);
  fp->add_option("--box", fp_box, "x0 x1 y0 y1")->expected(4);

  // render / overlay
  auto add_render_opts = [](CLI::App* cmd, MapArgs& m, std::string& vp, int& pixels, int& nmax,
                            double& bailout, std::string& out) {
    m.attach(cmd);
    cmd->add_option("--viewport", vp, "cx,cy,w (w = half-extent)");
    cmd->add_option("--pixels", pixels);
    cmd->add_option("--nmax", nmax);
    cmd->add_option("--bailout", bailout);
    cmd->add_option("--out", out)->required();
  };
  auto* rd = app.add_subcommand("render", "escape-time image as binary PPM");
  MapArgs rd_map;
  std::string rd_vp = "0,0,8";
  int rd_pixels = 400, rd_nmax = 10000;
  double rd_bailout = 50.0;
  std::string rd_out;
  add_render_opts(rd, rd_map, rd_vp, rd_pixels, rd_nmax, rd_bailout, rd_out);

  auto* ov = app.add_subcommand("overlay", "render plus singular-orbit overlay");
  MapArgs ov_map;
  std::string ov_vp = "0,0,8";
  int ov_pixels = 400, ov_nmax = 10000, ov_orbit = 10000;
  double ov_bailout = 50.0;
  std::string ov_out;
  add_render_opts(ov, ov_map, ov_vp, ov_pixels, ov_nmax, ov_bailout, ov_out);
  ov->add_option("--orbit", ov_orbit, "forward images per singular value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // flatten CLI11's error codes into "usage error"
  }

  if (ve->parsed()) {
    EntireMap m = ve_map.build();
    ExpansionReport rep = LogDynamics(m).verify_expansion(ve_samples, ve_seed);
    std::printf("%s,%s,%lld,%lld,%.12g\n", family_name(m.family()),
                ve_map.params_text().c_str(), static_cast<long long>(rep.samples),
                static_cast<long long>(rep.violations), rep.min_margin);
    return 0;
  }
  if (fc->parsed()) {
    EntireMap m = fc_map.build();
    double c = LogDynamics(m).find_cf(fc_domain, fc_rmax, fc_seed);
    std::printf("%s,%d,%.12g\n", family_name(m.family()), fc_domain, c);
    return 0;
  }
  if (co->parsed()) {
    EntireMap m = co_map.build();
    LogDynamics ld(m);
    cplx z = parse_pair(co_z, "--z");
    std::set<int> allowed(co_domains.begin(), co_domains.end());
    OrbitRecord rec = classify_growth(ld, allowed, co_radius, BigPoint::from_value(ld, z),
                                      co_nmax);
    int n = rec.classification == OrbitClass::Escaping
                ? rec.n_detect
                : (rec.classification == OrbitClass::LeftDomains ? rec.n_exit : -1);
    std::string doms;
    for (size_t i = 0; i < rec.domains_visited.size(); ++i)
      doms += (i ? "|" : "") + std::to_string(rec.domains_visited[i]);
    std::printf("%.17g,%.17g,%s,%d,%s\n", z.real(), z.imag(),
                orbit_class_name(rec.classification), n, doms.c_str());
    return 0;
  }
  if (er->parsed()) {
    EntireMap m = er_map.build();
    std::set<int> allowed(er_domains.begin(), er_domains.end());
    double rp = estimate_Rprime(LogDynamics(m), allowed, er_radius, er_probes, er_nmax,
                                er_seed);
    std::printf("%s,%.12g,%.12g\n", family_name(m.family()), er_radius, rp);
    return 0;
  }
  if (tr->parsed()) {
    EntireMap m = tr_map.build();
    LogDynamics ld(m);
    auto samples = trace_ray(ld, ExternalAddress::parse(tr_addr), tr_t0, tr_t1, tr_samples);
    for (const RaySample& s : samples) {
      cplx z = s.point.is_log() ? std::exp(s.point.logp().zeta) : s.point.value();
      std::printf("%.12g,%.17g,%.17g,%d\n", s.t, z.real(), z.imag(), s.address_digit);
    }
    return 0;
  }
  if (lr->parsed()) {
    EntireMap m = lr_map.build();
    ExternalAddress addr = ExternalAddress::parse(lr_addr);
    LandingResult res = land_ray(LogDynamics(m), addr, lr_pullbacks);
    if (!res.landed) {
      std::printf("%s;no-convergence;nan;nan;nan;-\n", addr.str().c_str());
      std::fprintf(stderr, "land-ray: %s\n", res.diagnostic.c_str());
      return 2;
    }
    std::printf("%s;landed;%.12f;%.12f;%.12f;%s\n", addr.str().c_str(), res.fp.point.real(),
                res.fp.point.imag(), std::abs(res.fp.multiplier),
                stability_name(res.fp.stability));
    return 0;
  }
  if (fp->parsed()) {
    EntireMap m = fp_map.build();
    SearchBox box{fp_box[0], fp_box[1], fp_box[2], fp_box[3]};
    for (const FixedPointInfo& info : find_fixed_points(m, fp_period, box, fp_grid))
      std::printf("%.12f,%.12f,%d,%.12g,%.12g,%s\n", info.point.real(), info.point.imag(),
                  info.period, info.multiplier.real(), info.multiplier.imag(),
                  stability_name(info.stability));
    return 0;
  }
  if (rd->parsed() || ov->parsed()) {
    bool with_overlay = ov->parsed();
    MapArgs& margs = with_overlay ? ov_map : rd_map;
    const std::string& vps = with_overlay ? ov_vp : rd_vp;
    int pixels = with_overlay ? ov_pixels : rd_pixels;
    int nmax = with_overlay ? ov_nmax : rd_nmax;
    double bailout = with_overlay ? ov_bailout : rd_bailout;
    const std::string& out = with_overlay ? ov_out : rd_out;
    EntireMap m = margs.build();
    double cx, cy, w;
    char tail;
    if (std::sscanf(vps.c_str(), "%lf,%lf,%lf%c", &cx, &cy, &w, &tail) != 3)
      throw std::invalid_argument("--viewport: expected cx,cy,w");
    ClassifiedImage img = render(m, Viewport::square({cx, cy}, w, pixels), nmax, bailout);
    if (with_overlay) img = overlay_singular_orbit(m, std::move(img), ov_orbit);
    write_ppm(img, out);
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
