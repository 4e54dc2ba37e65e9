#include "umbilic/ellipsoid.hpp"

#include <cmath>
#include <sstream>

namespace umbilic {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// stored vertices must meet these (LocusCurve invariant)
constexpr double kVertexRhoTol = 1e-10;
constexpr double kVertexDefiningTol = 1e-8;

void require_locus_params(const EllipsoidParams& e, const char* who) {
  e.validate();
  if (e.a == 0.0) {
    throw SphereEverywhereUmbilical(std::string(who) + ": a = b = 0 is the sphere, every point is umbilical");
  }
}

cplx p_of(const FrameContractions& c) {
  const double J = c.J, J3 = J * J * J, J4 = J3 * J, J5 = J4 * J;
  const cplx LL = c.rzzLL, NL = c.rzzNL, cLL = std::conj(LL);
  return -0.5 * cLL * c.detRzz / J3 - 2.0 * std::conj(c.rzzNN) / J3 + std::norm(LL) / J4 -
         4.0 * std::norm(NL) / J4 - 2.5 * cLL * NL * NL / J5;
}

FrameContractions checked_contractions(const Point4& p, const EllipsoidParams& e, const char* who) {
  const FrameContractions c = ellipsoid_contractions(p, e);
  if (!on_surface(c)) throw OffSurface(std::string(who) + ": point is off the ellipsoid");
  return c;
}

void fill_and_check(LocusCurve& c, int samples) {
  if (samples < 3) throw std::invalid_argument("curve sampling needs at least 3 points");
  c.sample(samples);
  for (const LocusVertex& v : c.polyline) {
    if (!(v.rho_residual <= kVertexRhoTol) || !(v.defining_residual <= kVertexDefiningTol)) {
      std::ostringstream os;
      os << c.label() << ": vertex at t=" << v.t << " has residuals " << v.rho_residual << ", "
         << v.defining_residual;
      throw std::runtime_error(os.str());
    }
  }
}

}  // namespace

void EllipsoidParams::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidParameters("ellipsoid parameters must be finite");
  if (!(b >= 0.0 && b <= a && a <= kMaxA)) {
    std::ostringstream os;
    os.precision(17);
    os << "ellipsoid parameters need 0 <= b <= a <= 1-1e-9, got a=" << a << " b=" << b;
    throw InvalidParameters(os.str());
  }
}

double ellipsoid_rho(const Point4& p, const EllipsoidParams& e) {
  return -1.0 + p.norm2() + (e.a * p.z * p.z + e.b * p.w * p.w).real();
}

FrameContractions ellipsoid_contractions(const Point4& p, const EllipsoidParams& e) {
  return contractions(assemble_rho_jet(p, e.f().jet(p)));
}

std::string to_string(CurveKind k) {
  switch (k) {
    case CurveKind::GammaPlus: return "gamma_plus";
    case CurveKind::GammaMinus: return "gamma_minus";
    case CurveKind::SpecialB0: return "special_b0";
    case CurveKind::SpecialBA: return "special_ba";
    case CurveKind::Traced: return "traced";
  }
  return "unknown";
}

Point4 gamma_curve(const EllipsoidParams& e, int sign, double t) {
  require_locus_params(e, "gamma_curve");
  if (e.b == 0.0) {
    throw DegenerateCurve("gamma_curve: for b = 0 both curves are the circle w = 0 (use zero_w_circle)");
  }
  if (sign != 1 && sign != -1) throw std::invalid_argument("gamma_curve: sign must be +1 or -1");
  const double a = e.a, b = e.b;
  const double ka = std::sqrt(a / (a + b)), kb = std::sqrt(b / (a + b));
  const cplx z = ka * cplx(std::sqrt(1 - b) * std::cos(t) / std::sqrt(1 + a),
                           std::sqrt(1 + b) * std::sin(t) / std::sqrt(1 - a));
  const cplx w = double(sign) * kb *
                 cplx(std::sqrt(1 - a) * std::sin(t) / std::sqrt(1 + b),
                      -std::sqrt(1 + a) * std::cos(t) / std::sqrt(1 - b));
  return {z, w};
}

Point4 zero_w_circle(const EllipsoidParams& e, double t) {
  e.validate();
  return {cplx(std::cos(t) / std::sqrt(1 + e.a), std::sin(t) / std::sqrt(1 - e.a)), cplx{}};
}

Cubic b0_cubic(double a) { return {4.0, 8.0 * (1.0 + a), 4.0 + 6.0 * a + 5.0 * a * a, -2.0 * a}; }

Cubic ba_cubic(double a) {
  return {a * a + 2.0 * a + 4.0, 4.0 - a * (19.0 * a + 34.0), a * (19.0 * a - 34.0) - 4.0, -a * a + 2.0 * a - 4.0};
}

Point4 LocusCurve::point(double t) const {
  const double a = params.a;
  switch (kind) {
    case CurveKind::GammaPlus:
    case CurveKind::GammaMinus:
      if (params.b == 0.0) return zero_w_circle(params, t);
      return gamma_curve(params, kind == CurveKind::GammaPlus ? 1 : -1, t);
    case CurveKind::SpecialB0: {
      const double s0 = root.value();
      const double zr = sign.value() * std::sqrt(s0 / ((1 + a) * (1 + a + s0)));
      const double rw = std::sqrt((1 + a) / (1 + a + s0));
      return {cplx(zr, 0.0), std::polar(rw, t)};
    }
    case CurveKind::SpecialBA: {
      const double tau_ = tau.value();
      const double k = 1.0 / std::sqrt(1 - a + tau_ * tau_ * (1 + a));
      const double p = std::sqrt(1 - a) / std::sqrt(1 + a), q = std::sqrt(1 + a) / std::sqrt(1 - a);
      return {k * cplx(p * std::cos(t), tau_ * q * std::sin(t)), k * cplx(p * std::sin(t), -tau_ * q * std::cos(t))};
    }
    case CurveKind::Traced: break;
  }
  throw std::logic_error("LocusCurve::point: traced curves have no closed form");
}

double LocusCurve::defining_residual(const Point4& p) const {
  if (kind == CurveKind::Traced) {
    const SexticForms s = sextic_forms(p, params);
    return std::max(std::fabs(s.re_s), std::fabs(s.im_s));
  }
  const FrameContractions c = ellipsoid_contractions(p, params);
  const bool on_gamma = kind == CurveKind::GammaPlus || kind == CurveKind::GammaMinus ||
                        (kind == CurveKind::SpecialBA && std::fabs(tau.value()) == 1.0);
  if (on_gamma) return std::abs(c.rzzLL);
  return std::abs(p_of(c));
}

void LocusCurve::sample(int n) {
  polyline.clear();
  polyline.reserve(n);
  for (int k = 0; k < n; ++k) {
    LocusVertex v;
    v.t = kTwoPi * k / n;
    v.p = point(v.t);
    v.rho_residual = std::fabs(ellipsoid_rho(v.p, params));
    v.defining_residual = defining_residual(v.p);
    polyline.push_back(v);
  }
}

std::string LocusCurve::label() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case CurveKind::GammaPlus:
    case CurveKind::GammaMinus:
      os << to_string(kind);
      if (params.b == 0.0) os << "(w=0 circle)";
      break;
    case CurveKind::SpecialB0:
      os << "special_b0(sign=" << (sign.value() > 0 ? "+" : "-") << ",s0=" << root.value() << ")";
      break;
    case CurveKind::SpecialBA:
      os << "special_ba(tau=" << tau.value() << ")";
      if (tau.value() == 1.0) os << "=gamma_plus";
      if (tau.value() == -1.0) os << "=gamma_minus(t->-t)";
      break;
    case CurveKind::Traced: os << "traced"; break;
  }
  return os.str();
}

std::vector<LocusCurve> gamma_loci(const EllipsoidParams& e, int samples) {
  require_locus_params(e, "gamma_loci");
  std::vector<LocusCurve> out;
  for (CurveKind k : {CurveKind::GammaPlus, CurveKind::GammaMinus}) {
    LocusCurve c;
    c.kind = k;
    c.params = e;
    c.sign = k == CurveKind::GammaPlus ? 1 : -1;
    fill_and_check(c, samples);
    out.push_back(std::move(c));
    if (e.b == 0.0) break;  // the two curves coincide
  }
  return out;
}

std::vector<LocusCurve> special_locus_b0(double a, int samples) {
  const EllipsoidParams e{a, 0.0};
  require_locus_params(e, "special_locus_b0");
  std::vector<LocusCurve> out = gamma_loci(e, samples);
  const double s0 = cubic_unique_positive_root(b0_cubic(a));
  for (int sg : {1, -1}) {
    LocusCurve c;
    c.kind = CurveKind::SpecialB0;
    c.params = e;
    c.sign = sg;
    c.root = s0;
    fill_and_check(c, samples);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<LocusCurve> special_locus_ba(double a, int samples) {
  const EllipsoidParams e{a, a};
  require_locus_params(e, "special_locus_ba");
  const double s0 = cubic_unique_positive_root(ba_cubic(a));
  const double r = std::sqrt(s0);
  std::vector<LocusCurve> out;
  for (double tau : {-1.0, 1.0, -r, r}) {
    LocusCurve c;
    c.kind = CurveKind::SpecialBA;
    c.params = e;
    c.tau = tau;
    if (std::fabs(tau) != 1.0) c.root = s0;
    fill_and_check(c, samples);
    out.push_back(std::move(c));
  }
  return out;
}

cplx p_functional(const Point4& p, const EllipsoidParams& e) {
  e.validate();
  const FrameContractions c = checked_contractions(p, e, "p_functional");
  if (!(c.J > 0.0)) throw std::domain_error("p_functional: J <= 0");
  return p_of(c);
}

cplx beltrami_coefficient(const Point4& p, const EllipsoidParams& e) {
  e.validate();
  const FrameContractions c = checked_contractions(p, e, "beltrami_coefficient");
  if (!(c.J > 0.0)) throw std::domain_error("beltrami_coefficient: J <= 0");
  return -c.rzzLL / c.J;
}

SexticForms sextic_forms(double x, double y, double u, double v, const EllipsoidParams& e) {
  const SexticValue<double> s = sextic_forms_t(x, y, u, v, e.a, e.b);
  return {s.re, s.im};
}

SexticForms sextic_forms(const Point4& p, const EllipsoidParams& e) {
  return sextic_forms(p.x(), p.y(), p.u(), p.v(), e);
}

Cubic seed_cubic(const EllipsoidParams& e) {
  const double a = e.a, b = e.b;
  const double a2 = a * a, b2 = b * b;
  return {(a * b2 + 4 * a - 2 * b2) / 2,
          (6 * a2 * b - 8 * a2 + 8 * a * b2 - 20 * a * b - 8 * a + 5 * b2 * b - 6 * b2 + 4 * b) / 2,
          (5 * a2 * a + 8 * a2 * b + 6 * a2 + 6 * a * b2 + 20 * a * b + 4 * a + 8 * b2 - 8 * b) / 2,
          (a2 * b + 2 * a2 + 4 * b) / 2};
}

double seed_cubic_root(const EllipsoidParams& e) {
  e.validate();
  if (!(e.b > 0.0 && e.b < e.a)) throw InvalidParameters("seed_cubic_root needs 0 < b < a < 1");
  try {
    return -cubic_unique_positive_root(seed_cubic(e).reflected());
  } catch (const std::domain_error& err) {
    throw DegenerateCurve(std::string("seed_cubic_root: ") + err.what());
  }
}

}  // namespace umbilic
