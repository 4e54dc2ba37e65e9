// Acceptance runner: one line per criterion. `acceptance --criterion N` runs a
// single one (ctest registers each separately); exit status is 0 iff every
// criterion that ran passed.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "umbilic/ellipsoid.hpp"
#include "umbilic/invariants.hpp"
#include "umbilic/sampling.hpp"
#include "umbilic/tracer.hpp"
#include "umbilic/verify.hpp"

using namespace umbilic;

namespace {

constexpr double kPi = 3.141592653589793;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Appends "msg" to the detail and folds ok into the verdict.
struct Report {
  Outcome o;
  std::ostringstream os;
  Report() { os.precision(3); }
  void check(bool ok, const std::string& what) {
    if (!ok) o.pass = false;
    if (!os.str().empty()) os << "; ";
    os << (ok ? "" : "FAILED ") << what;
  }
  Outcome done() {
    o.detail = os.str();
    return o;
  }
};

std::string fmt(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", x);
  return b;
}

std::string pair(const EllipsoidParams& e) { return "(" + fmt(e.a) + "," + fmt(e.b) + ")"; }

Outcome from_suites(const std::vector<std::string>& names, const VerifyOptions& base) {
  Report r;
  for (const auto& n : names) {
    VerifyOptions opt = base;
    const SuiteResult s = run_suite(n, opt);
    r.check(s.passed, n + " " + std::to_string(s.checked) + " checks, worst " + fmt(s.worst) + " of bound");
  }
  return r.done();
}

// Q11 from the separate covariant blocks, valid off M as well, so that a
// Newton iteration can move through the ambient space.
cplx q11_blocks(const Point4& p, const EllipsoidParams& e) {
  const FrameContractions c = ellipsoid_contractions(p, e);
  const cplx i(0.0, 1.0);
  return r_covariant_11(c) / 6.0 + 0.5 * i * webster_scalar_curvature(c) * torsion_a11(c) - a11_covariant_0(c) -
         (2.0 / 3.0) * i * a11_covariant_up1_1(c);
}

Eigen::Vector3d umbilic_system(const Eigen::Vector4d& x, const EllipsoidParams& e) {
  const Point4 p{{x[0], x[1]}, {x[2], x[3]}};
  const cplx q = q11_blocks(p, e);
  return {ellipsoid_rho(p, e), q.real(), q.imag()};
}

// Minimum-norm Gauss-Newton on {rho = 0, Q11 = 0} from p, projected radially
// onto M after every step. Ends either converged or stalled (no 1% progress
// in |Q11| over 10 steps); `q` is the final |Q11| either way.
struct Refined {
  bool converged = false;
  Point4 p{};
  double q = INFINITY;
};

Refined refine_to_locus(const Point4& start, const EllipsoidParams& e) {
  Eigen::Vector4d x(start.x(), start.y(), start.u(), start.v());
  Refined out;
  double best = INFINITY;
  int since_best = 0;
  for (int it = 0; it < 200; ++it) {
    const Eigen::Vector3d F = umbilic_system(x, e);
    out.p = Point4{{x[0], x[1]}, {x[2], x[3]}};
    out.q = std::hypot(F[1], F[2]);
    if (std::fabs(F[0]) <= 1e-14 && out.q <= 1e-12) {
      out.converged = true;
      return out;
    }
    if (out.q < 0.99 * best) {
      best = out.q;
      since_best = 0;
    } else if (++since_best > 10) {
      return out;
    }
    Eigen::Matrix<double, 3, 4> Jm;
    for (int k = 0; k < 4; ++k) {
      Eigen::Vector4d h = Eigen::Vector4d::Zero();
      h[k] = 1e-7;
      Jm.col(k) = (umbilic_system(x + h, e) - umbilic_system(x - h, e)) / 2e-7;
    }
    // small damping: on b = a the locus is a double zero of Q11 and the
    // Q rows of the Jacobian vanish there
    const Eigen::Matrix3d JJt = Jm * Jm.transpose() + 1e-12 * Eigen::Matrix3d::Identity();
    Eigen::Vector4d dx = -Jm.transpose() * JJt.ldlt().solve(F);
    if (!dx.allFinite()) return out;
    const double n = dx.norm();
    if (n > 0.05) dx *= 0.05 / n;
    x += dx;
    // back onto M, otherwise the iteration can settle on a minimum of the
    // residual away from the surface
    const Point4 q = scale_to_ellipsoid({{x[0], x[1]}, {x[2], x[3]}}, e);
    x = Eigen::Vector4d(q.x(), q.y(), q.u(), q.v());
  }
  return out;
}

// Dense sweep over the 3-angle chart, then every sweep point pushed onto the
// umbilical locus. Raw hits and converged points must lie near the returned
// curves, each curve must be reached, and a run that stalls must either stall
// at a clearly nonzero |Q11| or also be near the curves; a near-zero stall
// elsewhere would be a missed piece of the locus.
struct SweepTally {
  int hits = 0, converged = 0, far = 0, suspicious = 0;
  double worst_hit = 0.0, worst_refined = 0.0, lowest_stall = INFINITY;
  std::vector<double> reach;
};

SweepTally sweep(const EllipsoidParams& e, const std::vector<LocusCurve>& curves) {
  std::vector<std::vector<Point4>> polys;
  for (const auto& c : curves) polys.push_back(vertices_of(c));
  constexpr int n = 22;  // 22^3 = 10648 points
  // one task per eta row; tallies are merged in row order
  auto row = [&](int i) {
    SweepTally t;
    t.reach.assign(polys.size(), INFINITY);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Point4 p = ellipsoid_chart(e, (i + 0.5) * kPi / (2 * n), 2 * kPi * j / n, 2 * kPi * k / n);
        if (std::abs(q11_blocks(p, e)) <= 1e-10) {
          ++t.hits;
          t.worst_hit = std::max(t.worst_hit, distance_to_curves(p, polys, true));
        }
        const Refined q = refine_to_locus(p, e);
        const double d = distance_to_curves(q.p, polys, true);
        if (!q.converged) {
          if (d > 1e-3) {
            t.lowest_stall = std::min(t.lowest_stall, q.q);
            if (q.q < 1e-6) ++t.suspicious;
          }
          continue;
        }
        ++t.converged;
        t.worst_refined = std::max(t.worst_refined, d);
        if (d > 1e-3) ++t.far;
        for (std::size_t m = 0; m < polys.size(); ++m)
          t.reach[m] = std::min(t.reach[m], polyline_distance(q.p, polys[m], true));
      }
    return t;
  };
  std::vector<std::future<SweepTally>> rows;
  for (int i = 0; i < n; ++i) rows.push_back(std::async(std::launch::async, row, i));
  SweepTally t;
  t.reach.assign(polys.size(), INFINITY);
  for (auto& f : rows) {
    const SweepTally s = f.get();
    t.hits += s.hits;
    t.converged += s.converged;
    t.far += s.far;
    t.suspicious += s.suspicious;
    t.worst_hit = std::max(t.worst_hit, s.worst_hit);
    t.worst_refined = std::max(t.worst_refined, s.worst_refined);
    t.lowest_stall = std::min(t.lowest_stall, s.lowest_stall);
    for (std::size_t m = 0; m < polys.size(); ++m) t.reach[m] = std::min(t.reach[m], s.reach[m]);
  }
  return t;
}

// Folds the sweeps over several parameter values into one verdict.
void report_sweeps(const std::vector<SweepTally>& ts, Report& r) {
  int hits = 0, converged = 0, far = 0, suspicious = 0;
  double worst_hit = 0.0, worst_refined = 0.0, lowest_stall = INFINITY, worst_reach = 0.0;
  for (const SweepTally& t : ts) {
    hits += t.hits;
    converged += t.converged;
    far += t.far;
    suspicious += t.suspicious;
    worst_hit = std::max(worst_hit, t.worst_hit);
    worst_refined = std::max(worst_refined, t.worst_refined);
    lowest_stall = std::min(lowest_stall, t.lowest_stall);
    for (double d : t.reach) worst_reach = std::max(worst_reach, d);
  }
  r.check(worst_hit <= 1e-3, "sweep " + std::to_string(ts.size()) + " x 10648 pts, " + std::to_string(hits) + " hits");
  r.check(far == 0, std::to_string(converged) + " refined onto the locus, max dist " + fmt(worst_refined));
  r.check(suspicious == 0, std::isinf(lowest_stall) ? std::string("no stalls off the curves")
                                                     : "off-curve stalls have |Q11| >= " + fmt(lowest_stall));
  r.check(worst_reach <= 1e-3, "every curve reached within " + fmt(worst_reach));
}

VerifyOptions base_options() {
  VerifyOptions opt;
  opt.points = 1000;
  opt.oracle_points = 100;
  return opt;
}

Outcome c1() { return from_suites({"sphere"}, base_options()); }
Outcome c2() { return from_suites({"hessian_identity", "mainardi", "lj"}, base_options()); }
Outcome c3() { return from_suites({"factorization"}, base_options()); }
Outcome c4() { return from_suites({"oracle"}, base_options()); }

Outcome c5() {
  Report r;
  int pairs = 0;
  double worst_rho = 0.0, worst_q = 0.0;
  std::size_t n = 0;
  for (const EllipsoidParams& e : parameter_grid()) {
    if (e.b == 0.0) continue;
    ++pairs;
    for (const LocusCurve& c : gamma_loci(e, kDefaultCurveSamples)) {
      if (c.kind != CurveKind::GammaPlus && c.kind != CurveKind::GammaMinus) continue;
      for (const LocusVertex& v : c.polyline) {
        worst_rho = std::max(worst_rho, std::fabs(ellipsoid_rho(v.p, e)));
        worst_q = std::max(worst_q, std::abs(cartan_q11(ellipsoid_contractions(v.p, e)).Q11));
        ++n;
      }
    }
  }
  r.check(pairs == 20 && n == 20u * 2 * kDefaultCurveSamples, std::to_string(pairs) + " pairs, " + std::to_string(n) + " samples");
  r.check(worst_rho <= 1e-12, "max |rho| " + fmt(worst_rho));
  r.check(worst_q <= 1e-9, "max |Q11| " + fmt(worst_q));
  return r.done();
}

Outcome c6() {
  Report r;
  bool roots_ok = true, p_ok = true, count_ok = true;
  double worst_p = 0.0;
  std::vector<SweepTally> sweeps;
  for (int k = 1; k <= 9; ++k) {
    const double a = 0.1 * k;
    const double s0 = cubic_unique_positive_root(b0_cubic(a));
    roots_ok = roots_ok && s0 > 0.0 && s0 < a / 2;
    const auto curves = special_locus_b0(a);
    count_ok = count_ok && curves.size() == 3;
    for (const LocusCurve& c : curves)
      if (c.kind == CurveKind::SpecialB0)
        for (const LocusVertex& v : c.polyline) worst_p = std::max(worst_p, std::abs(p_functional(v.p, c.params)));
    sweeps.push_back(sweep({a, 0.0}, curves));
  }
  report_sweeps(sweeps, r);
  p_ok = worst_p <= 1e-10;
  r.check(roots_ok, "s0 in (0, a/2) for a = 0.1..0.9");
  r.check(count_ok, "three curves each");
  r.check(p_ok, "max |P| on the z = const curves " + fmt(worst_p));
  return r.done();
}

Outcome c7() {
  Report r;
  bool count_ok = true;
  double worst_ll = 0.0, worst_p = 0.0;
  std::vector<SweepTally> sweeps;
  for (int k = 1; k <= 9; ++k) {
    const double a = 0.1 * k;
    const auto curves = special_locus_ba(a);
    count_ok = count_ok && curves.size() == 4;
    for (const LocusCurve& c : curves) {
      const bool unit = std::fabs(*c.tau) == 1.0;
      for (const LocusVertex& v : c.polyline) {
        if (unit)
          worst_ll = std::max(worst_ll, std::abs(ellipsoid_contractions(v.p, c.params).rzzLL));
        else
          worst_p = std::max(worst_p, std::abs(p_functional(v.p, c.params)));
      }
    }
    sweeps.push_back(sweep({a, a}, curves));
  }
  report_sweeps(sweeps, r);
  const double s_at_0 = cubic_unique_positive_root(ba_cubic(0.0));
  r.check(count_ok, "four curves each");
  r.check(worst_ll <= 1e-12, "max |rho_ZZ(L,L)| on tau = +-1 " + fmt(worst_ll));
  r.check(worst_p <= 1e-10, "max |P| on tau = +-sqrt(s0) " + fmt(worst_p));
  r.check(std::fabs(s_at_0 - 1.0) <= 1e-14, "root at a = 0 is " + fmt(s_at_0));
  return r.done();
}

const std::vector<EllipsoidParams>& generic_pairs() {
  static const std::vector<EllipsoidParams> p{{0.5, 0.2}, {0.7, 0.3}, {0.4, 0.1}};
  return p;
}

Outcome c8() {
  Report r;
  for (const EllipsoidParams& e : generic_pairs()) {
    const TracedVariety v = trace_variety(e);
    r.check(!v.components.empty(), pair(e) + " " + std::to_string(v.components.size()) + " components");
    r.check(std::max(v.max_rho_residual(), v.max_sextic_residual()) <= 1e-8,
            pair(e) + " residual " + fmt(std::max(v.max_rho_residual(), v.max_sextic_residual())));
    r.check(v.min_gamma_distance() >= 1e-2, pair(e) + " dist to gamma " + fmt(v.min_gamma_distance()));
  }
  // approach to b = a, at the same values of a
  for (const EllipsoidParams& g : generic_pairs()) {
    const double a = g.a;
    const TracedVariety v = trace_variety({a, a - 1e-4});
    std::vector<std::vector<Point4>> special;
    std::vector<Point4> sp, tv;
    for (const LocusCurve& c : special_locus_ba(a)) {
      if (std::fabs(*c.tau) == 1.0) continue;
      special.push_back(vertices_of(c));
      sp.insert(sp.end(), special.back().begin(), special.back().end());
    }
    const auto traced = component_polylines(v);
    for (const auto& c : traced) tv.insert(tv.end(), c.begin(), c.end());
    const double h = std::max(directed_hausdorff(tv, special, true), directed_hausdorff(sp, traced, true));
    r.check(h <= 1e-3, "b = a - 1e-4 at a = " + fmt(a) + " Hausdorff " + fmt(h));
  }
  return r.done();
}

Outcome c9() {
  Report r;
  int compared = 0, mismatched = 0;
  double worst_h = 0.0;
  for (const EllipsoidParams& e : generic_pairs()) {
    for (const Point4& p : random_ellipsoid_points(e, 1000, 4242)) {
      const cplx P = p_functional(p, e);
      const SexticForms s = sextic_forms(p, e);
      if (std::abs(P) > 1e-8) {
        ++compared;
        if ((P.real() > 0) != (s.re_s > 0) || (P.imag() > 0) != (s.im_s > 0)) ++mismatched;
      }
      const SexticForms s2 = sextic_forms(2.0 * p, e);
      worst_h = std::max(worst_h, std::fabs(s2.re_s - 64 * s.re_s) / std::max(1e-300, std::fabs(64 * s.re_s)));
      worst_h = std::max(worst_h, std::fabs(s2.im_s - 64 * s.im_s) / std::max(1e-300, std::fabs(64 * s.im_s)));
    }
  }
  r.check(compared > 0 && mismatched == 0,
          std::to_string(mismatched) + " sign mismatches of " + std::to_string(compared));
  r.check(worst_h <= 1e-12, "degree-6 homogeneity " + fmt(worst_h));
  return r.done();
}

Outcome c10() {
  Report r;
  double on_gamma = 0.0, on_v = INFINITY;
  for (const EllipsoidParams& e : generic_pairs()) {
    for (const auto& poly : gamma_polylines(e))
      for (const Point4& p : poly) on_gamma = std::max(on_gamma, std::abs(beltrami_coefficient(p, e)));
    for (const auto& c : trace_variety(e).components)
      for (const auto& v : c.vertices) on_v = std::min(on_v, std::abs(beltrami_coefficient(v.p, e)));
  }
  r.check(on_gamma <= 1e-12, "max on gamma " + fmt(on_gamma));
  r.check(on_v >= 1e-3, "min on V " + fmt(on_v));
  return r.done();
}

const std::vector<std::pair<const char*, Outcome (*)()>>& criteria() {
  static const std::vector<std::pair<const char*, Outcome (*)()>> c{
      {"sphere baseline", c1},
      {"identity suite", c2},
      {"factorization", c3},
      {"oracle equivalence", c4},
      {"gamma curves", c5},
      {"b = 0 locus", c6},
      {"b = a locus", c7},
      {"generic V by tracing", c8},
      {"sextic consistency", c9},
      {"Beltrami coefficient", c10},
  };
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria().size())) {
    std::fprintf(stderr, "criterion must be 1..%zu\n", criteria().size());
    return 2;
  }
  bool all = true;
  for (std::size_t k = 0; k < criteria().size(); ++k) {
    if (only != 0 && static_cast<int>(k) + 1 != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria()[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2zu %-22s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria()[k].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
