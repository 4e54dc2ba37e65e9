#include "umbilic/tracer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>

#include "umbilic/sampling.hpp"

namespace umbilic {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// forward-mode dual number carrying the gradient in (x, y, u, v)
struct D4 {
  double v = 0.0;
  std::array<double, 4> g{};
};
D4 operator+(const D4& p, const D4& q) {
  D4 r{p.v + q.v, {}};
  for (int i = 0; i < 4; ++i) r.g[i] = p.g[i] + q.g[i];
  return r;
}
D4 operator-(const D4& p, const D4& q) {
  D4 r{p.v - q.v, {}};
  for (int i = 0; i < 4; ++i) r.g[i] = p.g[i] - q.g[i];
  return r;
}
D4 operator-(const D4& p) {
  D4 r{-p.v, {}};
  for (int i = 0; i < 4; ++i) r.g[i] = -p.g[i];
  return r;
}
D4 operator*(const D4& p, const D4& q) {
  D4 r{p.v * q.v, {}};
  for (int i = 0; i < 4; ++i) r.g[i] = p.g[i] * q.v + p.v * q.g[i];
  return r;
}
D4 operator*(double s, const D4& p) {
  D4 r{s * p.v, {}};
  for (int i = 0; i < 4; ++i) r.g[i] = s * p.g[i];
  return r;
}

using Vec4 = Eigen::Vector4d;
using Vec3 = Eigen::Vector3d;
using Mat34 = Eigen::Matrix<double, 3, 4>;

Point4 to_point(const Vec4& x) { return Point4::from_real4({x[0], x[1], x[2], x[3]}); }
Vec4 to_vec(const Point4& p) { return {p.x(), p.y(), p.u(), p.v()}; }

// {rho, re_s, im_s}, with rho replaced by |p|^2 - 1 when tracing on S^3
class System {
 public:
  System(const EllipsoidParams& e, bool sphere) : e_(e), sphere_(sphere) {}

  void eval(const Vec4& x, Vec3& F, Mat34& J) const {
    const double ka = sphere_ ? 0.0 : e_.a, kb = sphere_ ? 0.0 : e_.b;
    const std::array<double, 4> c{1 + ka, 1 - ka, 1 + kb, 1 - kb};
    F[0] = -1.0;
    for (int i = 0; i < 4; ++i) {
      F[0] += c[i] * x[i] * x[i];
      J(0, i) = 2.0 * c[i] * x[i];
    }
    std::array<D4, 4> d;
    for (int i = 0; i < 4; ++i) {
      d[i].v = x[i];
      d[i].g[i] = 1.0;
    }
    const SexticValue<D4> s = sextic_forms_t(d[0], d[1], d[2], d[3], e_.a, e_.b);
    F[1] = s.re.v;
    F[2] = s.im.v;
    for (int i = 0; i < 4; ++i) {
      J(1, i) = s.re.g[i];
      J(2, i) = s.im.g[i];
    }
  }

  // componentwise residual test of the vertex invariant
  bool within(const Vec3& F, const Vec4& x, double tol) const {
    const double n2 = x.squaredNorm();
    return std::fabs(F[0]) <= tol && std::max(std::fabs(F[1]), std::fabs(F[2])) <= tol * (1.0 + n2 * n2 * n2);
  }

 private:
  EllipsoidParams e_;
  bool sphere_;
};

// kernel of the 3x4 Jacobian by signed 3x3 minors
Vec4 tangent(const Mat34& J) {
  Vec4 t;
  for (int i = 0; i < 4; ++i) {
    Eigen::Matrix3d m;
    for (int k = 0, col = 0; k < 4; ++k) {
      if (k == i) continue;
      m.col(col++) = J.col(k);
    }
    t[i] = ((i % 2) ? -1.0 : 1.0) * m.determinant();
  }
  const double n = t.norm();
  return n > 0.0 ? Vec4(t / n) : t;
}

bool rank_deficient(const Mat34& J) {
  Mat34 s = J;
  for (int r = 0; r < 3; ++r) {
    const double n = s.row(r).norm();
    if (n == 0.0) return true;
    s.row(r) /= n;
  }
  // eigenvalues of S S^T are the squared singular values, ascending
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(s * s.transpose());
  const Vec3 ev = es.eigenvalues();
  return !(ev[0] > 1e-18 * ev[2]);
}

// minimum-norm Gauss-Newton onto the solution set, for seeds
bool gauss_newton(const System& sys, Vec4& x, const TraceConfig& cfg) {
  Vec3 F;
  Mat34 J;
  for (int it = 0; it < 4 * cfg.max_newton_iters; ++it) {
    sys.eval(x, F, J);
    const Eigen::Matrix3d JJt = J * J.transpose();
    Vec4 dx = -J.transpose() * JJt.ldlt().solve(F);
    if (!dx.allFinite()) return false;
    const double n = dx.norm();
    if (n > 0.1) dx *= 0.1 / n;
    x += dx;
    if (n <= 1e-10) {
      sys.eval(x, F, J);
      return sys.within(F, x, cfg.newton_tol);
    }
  }
  return false;
}

// Newton on {F = 0, t.(x - xp) = 0}
bool correct(const System& sys, Vec4& x, const Vec4& t, const Vec4& xp, const TraceConfig& cfg, int& iters) {
  Vec3 F;
  Mat34 J;
  Eigen::Matrix4d A;
  Vec4 G;
  for (iters = 1; iters <= cfg.max_newton_iters; ++iters) {
    sys.eval(x, F, J);
    A.topRows<3>() = J;
    A.row(3) = t.transpose();
    G.head<3>() = F;
    G[3] = t.dot(x - xp);
    const Vec4 dx = A.partialPivLu().solve(-G);
    if (!dx.allFinite()) return false;
    x += dx;
    if (dx.norm() <= 1e-10) {
      sys.eval(x, F, J);
      return sys.within(F, x, cfg.newton_tol);
    }
  }
  return false;
}

struct Branch {
  std::vector<Vec4> pts;
  bool closed = false;
  bool split = false;
  bool singular_end = false;
};

Branch follow(const System& sys, const Vec4& x0, Vec4 t, const TraceConfig& cfg) {
  Branch b;
  b.pts.push_back(x0);
  const double h_max = cfg.step_len, h_min = cfg.step_len * 1e-4;
  double h = h_max;
  int easy = 0;
  bool left = false;
  Vec4 x = x0;
  Vec3 F;
  Mat34 J;
  while (static_cast<int>(b.pts.size()) < cfg.max_vertices) {
    const Vec4 xp = x + h * t;
    Vec4 xn = xp;
    int iters = 0;
    bool ok = correct(sys, xn, t, xp, cfg, iters);
    Vec4 tn;
    if (ok) {
      sys.eval(xn, F, J);
      tn = tangent(J);
      if (tn.dot(t) < 0.0) tn = -tn;
      ok = tn.dot(t) >= 0.9 && (xn - x).norm() <= 2.0 * h;
    }
    if (!ok) {
      h *= 0.5;
      easy = 0;
      if (h < h_min) {
        b.split = true;
        return b;
      }
      continue;
    }
    if (left && segment_distance(to_point(x0), to_point(x), to_point(xn)) <= cfg.step_len) {
      b.closed = true;
      return b;
    }
    x = xn;
    t = tn;
    b.pts.push_back(x);
    if ((x - x0).norm() > 2.0 * cfg.step_len) left = true;
    if (rank_deficient(J)) {
      b.split = true;
      b.singular_end = true;
      return b;
    }
    if (iters > cfg.max_newton_iters / 2) {
      h = std::max(0.5 * h, h_min);
      easy = 0;
    } else if (++easy >= 3) {
      h = std::min(2.0 * h, h_max);
      easy = 0;
    }
  }
  b.split = true;
  return b;
}

struct RawComponent {
  std::vector<Vec4> pts;
  std::vector<bool> singular;
  bool closed = false;
  bool split = false;
};

RawComponent trace_seed(const System& sys, const Vec4& seed, const TraceConfig& cfg) {
  Vec3 F;
  Mat34 J;
  sys.eval(seed, F, J);
  const Vec4 t0 = tangent(J);
  RawComponent c;
  const Branch fwd = follow(sys, seed, t0, cfg);
  if (fwd.closed) {
    c.pts = fwd.pts;
    c.singular.assign(c.pts.size(), false);
    c.closed = true;
    return c;
  }
  const Branch back = follow(sys, seed, -t0, cfg);
  for (auto it = back.pts.rbegin(); it != back.pts.rend(); ++it) c.pts.push_back(*it);
  c.singular.assign(c.pts.size(), false);
  if (back.singular_end) c.singular.front() = true;
  for (std::size_t k = 1; k < fwd.pts.size(); ++k) c.pts.push_back(fwd.pts[k]);
  c.singular.resize(c.pts.size(), false);
  if (fwd.singular_end) c.singular.back() = true;
  c.split = true;
  return c;
}

std::vector<Point4> as_points(const std::vector<Vec4>& v) {
  std::vector<Point4> out;
  out.reserve(v.size());
  for (const Vec4& x : v) out.push_back(to_point(x));
  return out;
}

void require_generic(const EllipsoidParams& e, const char* who) {
  e.validate();
  if (e.b == 0.0) throw InvalidParameters(std::string(who) + ": b = 0 has closed-form loci, use special_locus_b0");
  if (!(e.b < e.a)) throw InvalidParameters(std::string(who) + ": b = a has closed-form loci, use special_locus_ba");
}

Point4 hopf(double eta, double xi1, double xi2) {
  return {std::polar(std::cos(eta), xi1), std::polar(std::sin(eta), xi2)};
}

std::vector<Vec4> seeds_on(const EllipsoidParams& e, const TraceConfig& cfg, const System& sys) {
  // guaranteed seeds from the cubic construction
  const Point4 s0 = cubic_seed_point(e);
  std::vector<Point4> exact{s0, {std::conj(s0.z), std::conj(s0.w)}, {-s0.z, -s0.w},
                            {-std::conj(s0.z), -std::conj(s0.w)}};
  std::vector<Vec4> converged;
  for (Point4 p : exact) {
    if (cfg.on_sphere) p = (1.0 / std::sqrt(p.norm2())) * p;
    Vec4 x = to_vec(p);
    if (!gauss_newton(sys, x, cfg)) throw TracerFailure("seed_points: the cubic-root seed failed to converge");
    converged.push_back(x);
  }

  // sign-change cells of a Hopf grid
  const int n = cfg.seed_grid;
  const int ne = n + 1;
  std::vector<std::array<signed char, 2>> sg(static_cast<std::size_t>(ne) * n * n);
  auto idx = [&](int i, int j, int k) { return (static_cast<std::size_t>(i) * n + j) * n + k; };
  auto angles = [&](double i, double j, double k) {
    return std::array<double, 3>{0.5 * kPi * i / n, 2.0 * kPi * j / n, 2.0 * kPi * k / n};
  };
  for (int i = 0; i < ne; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const auto an = angles(i, j, k);
        const SexticForms s = sextic_forms(hopf(an[0], an[1], an[2]), e);
        sg[idx(i, j, k)] = {static_cast<signed char>((s.re_s > 0) - (s.re_s < 0)),
                            static_cast<signed char>((s.im_s > 0) - (s.im_s < 0))};
      }
  std::vector<Vec4> candidates;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        bool pos[2]{}, neg[2]{};
        for (int c = 0; c < 8; ++c) {
          const auto& v = sg[idx(i + (c & 1), (j + ((c >> 1) & 1)) % n, (k + ((c >> 2) & 1)) % n)];
          for (int q = 0; q < 2; ++q) {
            pos[q] |= v[q] >= 0;
            neg[q] |= v[q] <= 0;
          }
        }
        if (!(pos[0] && neg[0] && pos[1] && neg[1])) continue;
        const auto an = angles(i + 0.5, j + 0.5, k + 0.5);
        const Point4 d = hopf(an[0], an[1], an[2]);
        candidates.push_back(to_vec(cfg.on_sphere ? d : scale_to_ellipsoid(d, e)));
      }

  // correct in parallel chunks, keep in cell order
  std::vector<char> ok(candidates.size(), 0);
  const std::size_t chunks = 8;
  std::vector<std::future<void>> jobs;
  for (std::size_t c = 0; c < chunks; ++c) {
    jobs.push_back(std::async(std::launch::async, [&, c] {
      for (std::size_t m = c; m < candidates.size(); m += chunks) {
        Vec3 F;
        Mat34 J;
        ok[m] = gauss_newton(sys, candidates[m], cfg);
        if (ok[m]) {
          sys.eval(candidates[m], F, J);
          ok[m] = !rank_deficient(J);
        }
      }
    }));
  }
  for (auto& j : jobs) j.get();
  for (std::size_t m = 0; m < candidates.size(); ++m)
    if (ok[m]) converged.push_back(candidates[m]);

  std::vector<Vec4> unique;
  for (const Vec4& x : converged) {
    bool dup = false;
    for (const Vec4& y : unique) dup = dup || (x - y).norm() <= cfg.step_len;
    if (!dup) unique.push_back(x);
  }
  return unique;
}

}  // namespace

void TraceConfig::validate() const {
  if (!(newton_tol > 0.0)) throw std::invalid_argument("TraceConfig: newton_tol must be > 0");
  if (!(step_len > 0.0)) throw std::invalid_argument("TraceConfig: step_len must be > 0");
  if (seed_grid < 8) throw std::invalid_argument("TraceConfig: seed_grid must be >= 8");
  if (max_newton_iters < 2) throw std::invalid_argument("TraceConfig: max_newton_iters must be >= 2");
  if (max_vertices < 2) throw std::invalid_argument("TraceConfig: max_vertices must be >= 2");
  if (gamma_samples < 3) throw std::invalid_argument("TraceConfig: gamma_samples must be >= 3");
}

double TracedVariety::max_rho_residual() const {
  double m = 0.0;
  for (const auto& c : components)
    for (const auto& v : c.vertices) m = std::max(m, v.rho_residual);
  return m;
}

double TracedVariety::max_sextic_residual() const {
  double m = 0.0;
  for (const auto& c : components)
    for (const auto& v : c.vertices) m = std::max({m, v.re_residual, v.im_residual});
  return m;
}

double TracedVariety::min_gamma_distance() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : components)
    for (const auto& v : c.vertices) m = std::min(m, v.gamma_distance);
  return m;
}

std::size_t TracedVariety::vertex_count() const {
  std::size_t n = 0;
  for (const auto& c : components) n += c.vertices.size();
  return n;
}

Point4 scale_to_ellipsoid(const Point4& d, const EllipsoidParams& e) {
  e.validate();
  // rho(l d) = -1 + l^2 q
  const double q = d.norm2() + (e.a * d.z * d.z + e.b * d.w * d.w).real();
  if (!(q > 0.0) || !std::isfinite(q)) throw std::domain_error("scale_to_ellipsoid: zero or non-finite direction");
  return (1.0 / std::sqrt(q)) * d;
}

Point4 cubic_seed_point(const EllipsoidParams& e) {
  const double tau = seed_cubic_root(e);
  // rho_z = sqrt(-tau) (X = i s, s = -tau), rho_w = i (Y = -i)
  const cplx rz(std::sqrt(-tau), 0.0), rw(0.0, 1.0);
  const Point4 p{{rz.real() / (1 + e.a), -rz.imag() / (1 - e.a)}, {rw.real() / (1 + e.b), -rw.imag() / (1 - e.b)}};
  return scale_to_ellipsoid(p, e);
}

std::vector<Point4> seed_points(const EllipsoidParams& e, const TraceConfig& cfg) {
  require_generic(e, "seed_points");
  cfg.validate();
  return as_points(seeds_on(e, cfg, System(e, cfg.on_sphere)));
}

std::vector<std::vector<Point4>> gamma_polylines(const EllipsoidParams& e, int samples) {
  std::vector<std::vector<Point4>> out;
  for (const LocusCurve& c : gamma_loci(e, samples)) out.push_back(vertices_of(c));
  return out;
}

TracedVariety trace_variety(const EllipsoidParams& e, const TraceConfig& cfg) {
  require_generic(e, "trace_variety");
  cfg.validate();
  const System sys(e, cfg.on_sphere);
  const std::vector<Vec4> seeds = seeds_on(e, cfg, sys);

  TracedVariety out;
  out.params = e;
  out.seeds_converged = seeds.size();

  std::vector<RawComponent> kept;
  std::vector<std::vector<Point4>> kept_pts;
  auto claimed = [&](const Vec4& x) {
    for (std::size_t m = 0; m < kept.size(); ++m)
      if (polyline_distance(to_point(x), kept_pts[m], kept[m].closed) <= cfg.step_len) return true;
    return false;
  };

  // fixed batch size keeps the result independent of the hardware
  constexpr std::size_t kBatch = 8;
  std::size_t next = 0;
  while (next < seeds.size()) {
    std::vector<std::size_t> batch;
    for (; next < seeds.size() && batch.size() < kBatch; ++next)
      if (!claimed(seeds[next])) batch.push_back(next);
    std::vector<std::future<RawComponent>> jobs;
    for (std::size_t m : batch)
      jobs.push_back(std::async(std::launch::async, [&, m] { return trace_seed(sys, seeds[m], cfg); }));
    for (std::size_t q = 0; q < batch.size(); ++q) {
      RawComponent c = jobs[q].get();
      if (claimed(seeds[batch[q]])) continue;
      kept_pts.push_back(as_points(c.pts));
      kept.push_back(std::move(c));
    }
  }

  const auto gammas = gamma_polylines(e, cfg.gamma_samples);
  for (const RawComponent& c : kept) {
    TracedComponent tc;
    tc.closed = c.closed;
    tc.split = c.split;
    for (std::size_t k = 0; k < c.pts.size(); ++k) {
      TracedVertex v;
      v.p = to_point(c.pts[k]);
      if (cfg.on_sphere) v.p = scale_to_ellipsoid(v.p, e);
      v.singular = c.singular[k];
      v.rho_residual = std::fabs(ellipsoid_rho(v.p, e));
      const SexticForms s = sextic_forms(v.p, e);
      v.re_residual = std::fabs(s.re_s);
      v.im_residual = std::fabs(s.im_s);
      v.gamma_distance = distance_to_curves(v.p, gammas, true);
      const double n2 = v.p.norm2();
      if (v.rho_residual > cfg.newton_tol ||
          std::max(v.re_residual, v.im_residual) > cfg.newton_tol * (1.0 + n2 * n2 * n2)) {
        throw TracerFailure("trace_variety: emitted vertex violates the residual tolerance");
      }
      tc.vertices.push_back(v);
    }
    out.components.push_back(std::move(tc));
  }
  return out;
}

std::vector<std::vector<Point4>> component_polylines(const TracedVariety& v) {
  std::vector<std::vector<Point4>> out;
  for (const auto& c : v.components) {
    std::vector<Point4> pts;
    for (const auto& x : c.vertices) pts.push_back(x.p);
    out.push_back(std::move(pts));
  }
  return out;
}

}  // namespace umbilic
