#pragma once

// Defining function of a pluriharmonic perturbation of the unit sphere,
//
//     rho(z, w) = -1 + |z|^2 + |w|^2 + 2 Re f(z, w),   f holomorphic,
//
// together with its derivative jets, the frames L and N, and the scalar
// contractions that the closed-form invariants are written in.

#include <array>
#include <complex>
#include <functional>
#include <stdexcept>

namespace umbilic {

using cplx = std::complex<double>;

/// A point of C^2 = R^4, z = x + iy, w = u + iv.
struct Point4 {
  cplx z{};
  cplx w{};

  double x() const { return z.real(); }
  double y() const { return z.imag(); }
  double u() const { return w.real(); }
  double v() const { return w.imag(); }
  double norm2() const { return std::norm(z) + std::norm(w); }
  std::array<double, 4> real4() const { return {x(), y(), u(), v()}; }
  static Point4 from_real4(const std::array<double, 4>& r) { return {{r[0], r[1]}, {r[2], r[3]}}; }

  friend Point4 operator+(const Point4& p, const Point4& q) { return {p.z + q.z, p.w + q.w}; }
  friend Point4 operator-(const Point4& p, const Point4& q) { return {p.z - q.z, p.w - q.w}; }
  friend Point4 operator*(double s, const Point4& p) { return {s * p.z, s * p.w}; }
};

double distance(const Point4& p, const Point4& q);

/// A (1,0) vector V = V^1 d_z + V^2 d_w.
using Vec2 = std::array<cplx, 2>;

/// Holomorphic derivatives of f at a point up to total order four.
/// `dk[j]` holds d_z^(k-j) d_w^(j) f, i.e. entries are indexed by the number
/// of w-derivatives.
struct HoloJet4 {
  cplx f{};
  std::array<cplx, 2> d1{};
  std::array<cplx, 3> d2{};
  std::array<cplx, 4> d3{};
  std::array<cplx, 5> d4{};
};

/// Evaluates the holomorphic jet of f at a point.
using JetEvaluator = std::function<HoloJet4(const Point4&)>;

/// f(z, w) = sum c_ij (z - z0)^i (w - w0)^j with i + j <= 4.
class HolomorphicPolynomial {
 public:
  static constexpr int kMaxDegree = 4;

  HolomorphicPolynomial() = default;
  explicit HolomorphicPolynomial(Point4 center) : center_(center) {}

  /// Coefficient of (z - z0)^i (w - w0)^j.
  cplx& coeff(int i, int j);
  cplx coeff(int i, int j) const;
  const Point4& center() const { return center_; }

  /// Highest total degree carrying a nonzero coefficient (0 for f == const).
  int degree() const;

  cplx value(const Point4& p) const;
  HoloJet4 jet(const Point4& p) const;

  /// The Taylor polynomial of the given jet, centered at p. Exact for f of
  /// degree at most four.
  static HolomorphicPolynomial from_jet(const Point4& p, const HoloJet4& jet);

  /// f = (a z^2 + b w^2) / 2, so that 2 Re f = Re(a z^2 + b w^2).
  static HolomorphicPolynomial ellipsoid(double a, double b);

  JetEvaluator evaluator() const;

 private:
  Point4 center_{};
  std::array<std::array<cplx, kMaxDegree + 1>, kMaxDegree + 1> c_{};
};

/// Derivatives of rho at a point. The Levi block rho_{j kbar} is the identity
/// and every other mixed derivative of order >= 2 vanishes, so only the
/// value, the gradient and the pure holomorphic derivatives are stored.
struct RhoJet {
  Point4 at{};
  double rho = 0.0;
  cplx rho_z{};
  cplx rho_w{};
  std::array<cplx, 3> d2{};
  std::array<cplx, 4> d3{};
  std::array<cplx, 5> d4{};

  static constexpr double levi(int j, int k) { return j == k ? 1.0 : 0.0; }
  Vec2 gradient() const { return {rho_z, rho_w}; }
};

struct Frames {
  Vec2 L{};  ///< rho_w d_z - rho_z d_w, spans T^{1,0}M
  Vec2 N{};  ///< conj(rho_z) d_z + conj(rho_w) d_w
};

/// Scalar contractions consumed by the invariant formulas. Multilinear
/// forms act on (1,0) vectors without conjugation: rho_ZZ(X, Y) = rho_jk X^j Y^k.
struct FrameContractions {
  double J = 0.0;  ///< Levi-Fefferman determinant
  cplx rzzLL{};
  cplx rzzNL{};
  cplx rzzNN{};
  cplx detRzz{};
  cplx rzzzNLL{};
  cplx rzzzLLL{};
  cplx rzzzLLSL{};  ///< rho_ZZZ(L, L, rho_ZZ . L); reported only, Q11 does not need it
  cplx rzzzzLLLL{};
  double rho = 0.0;   ///< value of the defining function where these were taken
  double norm2 = 0.0; ///< |z|^2 + |w|^2 at that point
};

class NonFiniteInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown where the gradient of rho vanishes and the frames are undefined.
class DegenerateGradient : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown where an invariant restricted to the hypersurface is requested at a
/// point off it.
class OffSurface : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Relative membership tolerance: p is on M when |rho| <= kMembershipTol (1 + |p|^2).
inline constexpr double kMembershipTol = 1e-12;

bool on_surface(double rho, double norm2, double tol = kMembershipTol);
bool on_surface(const RhoJet& j, double tol = kMembershipTol);
bool on_surface(const FrameContractions& c, double tol = kMembershipTol);

RhoJet assemble_rho_jet(const Point4& p, const HoloJet4& fj);

/// Value of rho alone, from f's value at p.
double rho_value(const Point4& p, cplx f_value);

/// Minus the determinant of the bordered complex Hessian.
double levi_fefferman(const RhoJet& j);

/// |rho_z|^2 + |rho_w|^2 - rho; equals levi_fefferman for a pluriharmonic perturbation.
double levi_fefferman_closed_form(const RhoJet& j);

Frames frames(const RhoJet& j);

FrameContractions contractions(const RhoJet& j);

/// Contractions of the pure holomorphic jets against arbitrary (1,0) vectors.
cplx contract2(const std::array<cplx, 3>& d2, const Vec2& x, const Vec2& y);
cplx contract3(const std::array<cplx, 4>& d3, const Vec2& x, const Vec2& y, const Vec2& v);
cplx contract4(const std::array<cplx, 5>& d4, const Vec2& x, const Vec2& y, const Vec2& v,
               const Vec2& s);

/// L(J) by chain rule on J = rho_z rho_zbar + rho_w rho_wbar - rho.
cplx l_derivative_of_j(const RhoJet& j);

/// Lbar(rho_ZZ(L, L)) by chain rule on the contraction.
cplx lbar_derivative_of_rzzLL(const RhoJet& j);

}  // namespace umbilic
