#include "umbilic/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "umbilic/roots.hpp"
#include "umbilic/tracer.hpp"

namespace umbilic {

namespace {

double dot4(const Point4& p, const Point4& q) { return (p.z * std::conj(q.z) + p.w * std::conj(q.w)).real(); }

Point4 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    const Point4 d{{g(rng), g(rng)}, {g(rng), g(rng)}};
    const double n = std::sqrt(d.norm2());
    if (n > 1e-8) return (1.0 / n) * d;
  }
}

}  // namespace

Point4 radial_to_surface(const Point4& dir, const HolomorphicPolynomial& f) {
  const double n = std::sqrt(dir.norm2());
  if (!(n > 0.0) || !std::isfinite(n)) throw std::domain_error("radial_to_surface: zero direction");
  const Point4 d = (1.0 / n) * dir;
  auto rho = [&](double t) {
    const Point4 p = t * d;
    return rho_value(p, f.value(p));
  };
  auto drho = [&](double t) {
    const Point4 p = t * d;
    const HoloJet4 j = f.jet(p);
    const RhoJet r = assemble_rho_jet(p, j);
    return 2.0 * (r.rho_z * d.z + r.rho_w * d.w).real();
  };
  if (!(rho(0.0) < 0.0)) throw std::domain_error("radial_to_surface: origin is not inside M");
  // march outward; rho grows like t^2 near the sphere for small perturbations
  const double dt = 1.0 / 64.0;
  double lo = 0.0;
  for (double t = dt; t <= 16.0; t += dt) {
    if (rho(t) >= 0.0) {
      const double r = safeguarded_newton(rho, drho, lo, t, 0.0, 200);
      return r * d;
    }
    lo = t;
  }
  throw std::domain_error("radial_to_surface: ray does not meet M within |p| <= 16");
}

std::vector<Point4> random_surface_points(const HolomorphicPolynomial& f, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point4> out;
  out.reserve(n);
  // Strong quartic terms can bend M back towards the origin so that some rays
  // never cross it; those directions are redrawn.
  int misses = 0;
  while (static_cast<int>(out.size()) < n) {
    try {
      out.push_back(radial_to_surface(random_direction(rng), f));
    } catch (const std::domain_error&) {
      if (++misses > 100 * (n + 1)) throw;
    }
  }
  return out;
}

std::vector<Point4> random_ellipsoid_points(const EllipsoidParams& e, int n, std::uint64_t seed) {
  e.validate();
  std::mt19937_64 rng(seed);
  std::vector<Point4> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) out.push_back(scale_to_ellipsoid(random_direction(rng), e));
  return out;
}

Point4 torus_chart(const EllipsoidParams& e, double eta, double phi) { return ellipsoid_chart(e, eta, phi, phi); }

Point4 ellipsoid_chart(const EllipsoidParams& e, double eta, double phi, double psi) {
  e.validate();
  const double ce = std::cos(eta), se = std::sin(eta);
  const cplx z(ce * std::cos(phi) / std::sqrt(1 + e.a), ce * std::sin(phi) / std::sqrt(1 - e.a));
  const cplx w(se * std::cos(psi) / std::sqrt(1 + e.b), se * std::sin(psi) / std::sqrt(1 - e.b));
  return {z, w};
}

double segment_distance(const Point4& p, const Point4& a, const Point4& b) {
  const Point4 ab = b - a, ap = p - a;
  const double len2 = ab.norm2();
  double t = len2 > 0.0 ? dot4(ap, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + t * ab);
}

double polyline_distance(const Point4& p, const std::vector<Point4>& pts, bool closed) {
  if (pts.empty()) return std::numeric_limits<double>::infinity();
  if (pts.size() == 1) return distance(p, pts[0]);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) best = std::min(best, segment_distance(p, pts[k], pts[k + 1]));
  if (closed) best = std::min(best, segment_distance(p, pts.back(), pts.front()));
  return best;
}

double distance_to_curves(const Point4& p, const std::vector<std::vector<Point4>>& curves, bool closed) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : curves) best = std::min(best, polyline_distance(p, c, closed));
  return best;
}

double directed_hausdorff(const std::vector<Point4>& from, const std::vector<std::vector<Point4>>& to,
                          bool closed) {
  double worst = 0.0;
  for (const Point4& p : from) worst = std::max(worst, distance_to_curves(p, to, closed));
  return worst;
}

std::vector<Point4> vertices_of(const LocusCurve& c) {
  std::vector<Point4> out;
  out.reserve(c.polyline.size());
  for (const LocusVertex& v : c.polyline) out.push_back(v.p);
  return out;
}

}  // namespace umbilic
