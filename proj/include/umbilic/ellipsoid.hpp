#pragma once

// Real ellipsoids rho = -1 + |z|^2 + |w|^2 + Re(a z^2 + b w^2), 0 <= b <= a < 1.
//
// Their CR umbilical locus is the zero set of Q11 = rho_ZZ(L, L) * P[rho] on
// the ellipsoid: the curves gamma_{1,2} where rho_ZZ(L, L) vanishes, and the
// variety V where P vanishes. V has closed forms when b = 0 or b = a; in
// general it is cut out by two homogeneous sextics (see tracer.hpp).

#include <optional>
#include <string>
#include <vector>

#include "umbilic/ambient.hpp"
#include "umbilic/roots.hpp"

namespace umbilic {

class InvalidParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a closed-form curve is requested for parameters at which it
/// degenerates or does not exist.
class DegenerateCurve : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Everywhere umbilical: a = b = 0 is the sphere.
class SphereEverywhereUmbilical : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct EllipsoidParams {
  double a = 0.0;
  double b = 0.0;

  static constexpr double kMaxA = 1.0 - 1e-9;

  /// Throws InvalidParameters unless 0 <= b <= a <= 1 - 1e-9.
  void validate() const;
  bool is_sphere() const { return a == 0.0 && b == 0.0; }
  HolomorphicPolynomial f() const { return HolomorphicPolynomial::ellipsoid(a, b); }
};

double ellipsoid_rho(const Point4& p, const EllipsoidParams& e);
FrameContractions ellipsoid_contractions(const Point4& p, const EllipsoidParams& e);

enum class CurveKind { GammaPlus, GammaMinus, SpecialB0, SpecialBA, Traced };

std::string to_string(CurveKind k);

struct LocusVertex {
  Point4 p{};
  double t = 0.0;                  ///< curve parameter (arc index for traced curves)
  double rho_residual = 0.0;       ///< |rho(p)|
  double defining_residual = 0.0;  ///< residual of the equation defining this kind of curve
};

/// One component of the umbilical locus.
///
/// GammaPlus/GammaMinus: the curves gamma_{1,2} (for b = 0 both are the circle
/// w = 0). SpecialB0: the curves with z = sign * const when b = 0.
/// SpecialBA: the b = a family with parameter tau. Traced: a numerically
/// traced polyline, stored in `polyline`.
struct LocusCurve {
  CurveKind kind = CurveKind::GammaPlus;
  EllipsoidParams params{};
  std::optional<double> tau;
  std::optional<int> sign;
  std::optional<double> root;  ///< s0 of the cubic behind SpecialB0 / SpecialBA curves
  std::vector<LocusVertex> polyline;

  /// Closed-form point at parameter t in [0, 2 pi). Not defined for Traced.
  Point4 point(double t) const;
  /// Residual of this curve's defining equation at p (rho_ZZ(L, L) or P[rho]).
  double defining_residual(const Point4& p) const;
  /// Fills `polyline` with n equally spaced samples and their residuals.
  void sample(int n);
  /// Description used in output files, e.g. "special_ba(tau=+1)=gamma_plus".
  std::string label() const;
};

inline constexpr int kDefaultCurveSamples = 720;

/// gamma_1 (sign = +1) and gamma_2 (sign = -1). Requires b > 0; for b = 0 the
/// curves collapse to the circle w = 0 (see zero_w_circle).
Point4 gamma_curve(const EllipsoidParams& e, int sign, double t);

/// z = cos t / sqrt(1 + a) + i sin t / sqrt(1 - a), w = 0.
Point4 zero_w_circle(const EllipsoidParams& e, double t);

/// 4 s^3 + 8 (1 + a) s^2 + (4 + 6a + 5a^2) s - 2a.
Cubic b0_cubic(double a);
/// (a^2 + 2a + 4) s^3 + (4 - a(19a + 34)) s^2 + (a(19a - 34) - 4) s - a^2 + 2a - 4.
Cubic ba_cubic(double a);

/// gamma curves plus the closed-form part of V, sampled. Each of the
/// following validates its parameters and checks the stored residuals.
std::vector<LocusCurve> gamma_loci(const EllipsoidParams& e, int samples = kDefaultCurveSamples);
/// b = 0: the circle w = 0 and the two curves z = +-sqrt(s0 / ((1+a)(1+a+s0))).
std::vector<LocusCurve> special_locus_b0(double a, int samples = kDefaultCurveSamples);
/// b = a: the four curves tau in {-1, 1, -sqrt(s0), sqrt(s0)}.
std::vector<LocusCurve> special_locus_ba(double a, int samples = kDefaultCurveSamples);

/// P[rho], the second factor of Q11 for the ellipsoid. Requires p on M.
cplx p_functional(const Point4& p, const EllipsoidParams& e);

/// -rho_ZZ(L, L) / J, the Beltrami coefficient. Requires p on M.
cplx beltrami_coefficient(const Point4& p, const EllipsoidParams& e);

/// Values of the two homogeneous sextics in (x, y, u, v) whose common zeros
/// on the ellipsoid form V.
struct SexticForms {
  double re_s = 0.0;
  double im_s = 0.0;
};

/// Written in X = i rho_z^2, Y = i rho_w^2 and normalized so that on M
/// re_s + i im_s = J^5 P[rho]. Generic in the scalar type so the tracer can
/// differentiate it.
template <class T>
struct SexticValue {
  T re;
  T im;
};

template <class T>
SexticValue<T> sextic_forms_t(const T& x, const T& y, const T& u, const T& v, double a, double b);

SexticForms sextic_forms(double x, double y, double u, double v, const EllipsoidParams& e);
SexticForms sextic_forms(const Point4& p, const EllipsoidParams& e);

/// The cubic in tau = s/t obtained by restricting Re P to X = i s, Y = i t with
/// s > 0 > t, i.e. rho_z real and rho_w imaginary.
Cubic seed_cubic(const EllipsoidParams& e);

/// Its unique root on tau < 0. Requires 0 < b < a < 1.
double seed_cubic_root(const EllipsoidParams& e);

// ---- small generic helpers for the sextics --------------------------------

namespace detail {

template <class T>
struct Cx {
  T re, im;
};
template <class T>
Cx<T> mul(const Cx<T>& p, const Cx<T>& q) {
  return {p.re * q.re - p.im * q.im, p.re * q.im + p.im * q.re};
}
template <class T>
Cx<T> conj(const Cx<T>& p) {
  return {p.re, -p.im};
}

// One half of Re(-J^5 P) in the (a, b, X, Y) <-> (b, a, Y, X) symmetric split.
template <class T>
T half_re(double a, double b, const Cx<T>& X, const Cx<T>& Y, const T& absX, const T& absY) {
  const T absX2 = absX * absX;
  const Cx<T> X2Yb = mul(mul(X, X), conj(Y));
  const Cx<T> XYb = mul(X, conj(Y));
  return 0.5 * a * (b * b + 4.0) * absX2 * X.im + 2.5 * a * a * b * X2Yb.im - b * b * absX2 * absX +
         4.0 * a * (1.0 - b * b) * absX * absY * X.im + (4.0 * a * a + 3.0 * b * b) * absX2 * absY -
         10.0 * a * b * absX * XYb.re + 0.5 * b * (4.0 + a * a + 5.0 * b * b) * absX2 * Y.im;
}

}  // namespace detail

template <class T>
SexticValue<T> sextic_forms_t(const T& x, const T& y, const T& u, const T& v, double a, double b) {
  using detail::Cx;
  // rho_z = zbar + a z, rho_w = wbar + b w
  const Cx<T> rz{(1.0 + a) * x, -(1.0 - a) * y};
  const Cx<T> rw{(1.0 + b) * u, -(1.0 - b) * v};
  const Cx<T> rz2 = detail::mul(rz, rz);
  const Cx<T> rw2 = detail::mul(rw, rw);
  const Cx<T> X{-rz2.im, rz2.re};  // i rho_z^2
  const Cx<T> Y{-rw2.im, rw2.re};
  const T absX = rz.re * rz.re + rz.im * rz.im;
  const T absY = rw.re * rw.re + rw.im * rw.im;
  const T absX2 = absX * absX, absY2 = absY * absY, absXY = absX * absY;
  const Cx<T> X2Yb = detail::mul(detail::mul(X, X), detail::conj(Y));
  const Cx<T> Y2Xb = detail::mul(detail::mul(Y, Y), detail::conj(X));

  const T im_display = 0.5 * a * (b * b - 4.0) * absX2 * X.re + 0.5 * b * (a * a - 4.0) * absY2 * Y.re +
                       2.5 * a * a * b * X2Yb.re + 2.5 * a * b * b * Y2Xb.re -
                       4.0 * a * (b * b + 1.0) * absXY * X.re - 4.0 * b * (a * a + 1.0) * absXY * Y.re +
                       0.5 * b * (a * a + 5.0 * b * b - 4.0) * absX2 * Y.re +
                       0.5 * a * (b * b + 5.0 * a * a - 4.0) * absY2 * X.re;
  const T re_display = detail::half_re(a, b, X, Y, absX, absY) + detail::half_re(b, a, Y, X, absY, absX);
  // re_display + i im_display = -J^5 P on M; flip to match P's sign.
  return {-re_display, -im_display};
}

}  // namespace umbilic
