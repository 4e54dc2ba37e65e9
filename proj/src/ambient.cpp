#include "umbilic/ambient.hpp"

#include <cmath>
#include <string>

namespace umbilic {

namespace {

constexpr std::array<double, 5> kFactorial{1.0, 1.0, 2.0, 6.0, 24.0};

bool finite(cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

// i! / (i - p)!
double falling(int i, int p) {
  double r = 1.0;
  for (int k = 0; k < p; ++k) r *= static_cast<double>(i - k);
  return r;
}

cplx ipow(cplx base, int n) {
  cplx r{1.0, 0.0};
  for (int k = 0; k < n; ++k) r *= base;
  return r;
}

// d^(p+q) f / dz^p dw^q of the polynomial at p.
cplx poly_derivative(const HolomorphicPolynomial& poly, const Point4& at, int p, int q) {
  const cplx dz = at.z - poly.center().z;
  const cplx dw = at.w - poly.center().w;
  cplx sum{};
  for (int i = p; i <= HolomorphicPolynomial::kMaxDegree; ++i) {
    for (int j = q; i + j <= HolomorphicPolynomial::kMaxDegree; ++j) {
      const cplx c = poly.coeff(i, j);
      if (c == cplx{}) continue;
      sum += c * falling(i, p) * falling(j, q) * ipow(dz, i - p) * ipow(dw, j - q);
    }
  }
  return sum;
}

}  // namespace

double distance(const Point4& p, const Point4& q) { return std::sqrt((p - q).norm2()); }

cplx& HolomorphicPolynomial::coeff(int i, int j) {
  if (i < 0 || j < 0 || i + j > kMaxDegree) {
    throw std::out_of_range("HolomorphicPolynomial: monomial degree exceeds 4");
  }
  return c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

cplx HolomorphicPolynomial::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > kMaxDegree) return {};
  return c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

int HolomorphicPolynomial::degree() const {
  int deg = 0;
  for (int i = 0; i <= kMaxDegree; ++i)
    for (int j = 0; i + j <= kMaxDegree; ++j)
      if (coeff(i, j) != cplx{}) deg = std::max(deg, i + j);
  return deg;
}

cplx HolomorphicPolynomial::value(const Point4& p) const { return poly_derivative(*this, p, 0, 0); }

HoloJet4 HolomorphicPolynomial::jet(const Point4& p) const {
  HoloJet4 j;
  j.f = poly_derivative(*this, p, 0, 0);
  for (int q = 0; q <= 1; ++q) j.d1[q] = poly_derivative(*this, p, 1 - q, q);
  for (int q = 0; q <= 2; ++q) j.d2[q] = poly_derivative(*this, p, 2 - q, q);
  for (int q = 0; q <= 3; ++q) j.d3[q] = poly_derivative(*this, p, 3 - q, q);
  for (int q = 0; q <= 4; ++q) j.d4[q] = poly_derivative(*this, p, 4 - q, q);
  return j;
}

HolomorphicPolynomial HolomorphicPolynomial::from_jet(const Point4& p, const HoloJet4& jet) {
  HolomorphicPolynomial poly(p);
  auto put = [&](int i, int j, cplx d) { poly.coeff(i, j) = d / (kFactorial[i] * kFactorial[j]); };
  put(0, 0, jet.f);
  for (int q = 0; q <= 1; ++q) put(1 - q, q, jet.d1[q]);
  for (int q = 0; q <= 2; ++q) put(2 - q, q, jet.d2[q]);
  for (int q = 0; q <= 3; ++q) put(3 - q, q, jet.d3[q]);
  for (int q = 0; q <= 4; ++q) put(4 - q, q, jet.d4[q]);
  return poly;
}

HolomorphicPolynomial HolomorphicPolynomial::ellipsoid(double a, double b) {
  HolomorphicPolynomial poly;
  poly.coeff(2, 0) = a / 2.0;
  poly.coeff(0, 2) = b / 2.0;
  return poly;
}

JetEvaluator HolomorphicPolynomial::evaluator() const {
  return [poly = *this](const Point4& p) { return poly.jet(p); };
}

bool on_surface(double rho, double norm2, double tol) { return std::abs(rho) <= tol * (1.0 + norm2); }
bool on_surface(const RhoJet& j, double tol) { return on_surface(j.rho, j.at.norm2(), tol); }
bool on_surface(const FrameContractions& c, double tol) { return on_surface(c.rho, c.norm2, tol); }

double rho_value(const Point4& p, cplx f_value) { return -1.0 + p.norm2() + 2.0 * f_value.real(); }

RhoJet assemble_rho_jet(const Point4& p, const HoloJet4& fj) {
  bool ok = finite(p.z) && finite(p.w) && finite(fj.f);
  for (auto c : fj.d1) ok = ok && finite(c);
  for (auto c : fj.d2) ok = ok && finite(c);
  for (auto c : fj.d3) ok = ok && finite(c);
  for (auto c : fj.d4) ok = ok && finite(c);
  if (!ok) throw NonFiniteInput("assemble_rho_jet: non-finite point or jet component");

  RhoJet j;
  j.at = p;
  j.rho = rho_value(p, fj.f);
  j.rho_z = std::conj(p.z) + fj.d1[0];
  j.rho_w = std::conj(p.w) + fj.d1[1];
  j.d2 = fj.d2;
  j.d3 = fj.d3;
  j.d4 = fj.d4;
  return j;
}

double levi_fefferman(const RhoJet& j) {
  // | rho     rho_zbar    rho_wbar    |
  // | rho_z   rho_zzbar   rho_zwbar   |
  // | rho_w   rho_wzbar   rho_wwbar   |
  const cplx m00 = j.rho, m01 = std::conj(j.rho_z), m02 = std::conj(j.rho_w);
  const cplx m10 = j.rho_z, m11 = RhoJet::levi(0, 0), m12 = RhoJet::levi(0, 1);
  const cplx m20 = j.rho_w, m21 = RhoJet::levi(1, 0), m22 = RhoJet::levi(1, 1);
  const cplx det = m00 * (m11 * m22 - m12 * m21) - m01 * (m10 * m22 - m12 * m20) +
                   m02 * (m10 * m21 - m11 * m20);
  return -det.real();
}

double levi_fefferman_closed_form(const RhoJet& j) {
  return std::norm(j.rho_z) + std::norm(j.rho_w) - j.rho;
}

Frames frames(const RhoJet& j) {
  if (j.rho_z == cplx{} && j.rho_w == cplx{}) {
    throw DegenerateGradient("frames: d rho vanishes, the point is critical for rho");
  }
  return {{j.rho_w, -j.rho_z}, {std::conj(j.rho_z), std::conj(j.rho_w)}};
}

cplx contract2(const std::array<cplx, 3>& d2, const Vec2& x, const Vec2& y) {
  cplx s{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) s += d2[a + b] * x[a] * y[b];
  return s;
}

cplx contract3(const std::array<cplx, 4>& d3, const Vec2& x, const Vec2& y, const Vec2& v) {
  cplx s{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) s += d3[a + b + c] * x[a] * y[b] * v[c];
  return s;
}

cplx contract4(const std::array<cplx, 5>& d4, const Vec2& x, const Vec2& y, const Vec2& v,
               const Vec2& s) {
  cplx r{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) r += d4[a + b + c + d] * x[a] * y[b] * v[c] * s[d];
  return r;
}

FrameContractions contractions(const RhoJet& j) {
  const Frames fr = frames(j);
  const Vec2& L = fr.L;
  const Vec2& N = fr.N;
  const Vec2 SL{j.d2[0] * L[0] + j.d2[1] * L[1], j.d2[1] * L[0] + j.d2[2] * L[1]};

  FrameContractions c;
  c.J = levi_fefferman(j);
  c.rzzLL = contract2(j.d2, L, L);
  c.rzzNL = contract2(j.d2, N, L);
  c.rzzNN = contract2(j.d2, N, N);
  c.detRzz = j.d2[0] * j.d2[2] - j.d2[1] * j.d2[1];
  c.rzzzNLL = contract3(j.d3, N, L, L);
  c.rzzzLLL = contract3(j.d3, L, L, L);
  c.rzzzLLSL = contract3(j.d3, L, L, SL);
  c.rzzzzLLLL = contract4(j.d4, L, L, L, L);
  c.rho = j.rho;
  c.norm2 = j.at.norm2();
  return c;
}

cplx l_derivative_of_j(const RhoJet& j) {
  const Vec2 grad = j.gradient();
  const Vec2 L{j.rho_w, -j.rho_z};
  auto hess = [&](int a, int b) { return j.d2[a + b]; };
  cplx lj{};
  for (int m = 0; m < 2; ++m) {
    // d_m (rho_k rho_kbar) = rho_km rho_kbar + rho_k rho_kbar,m
    cplx dm = -grad[m];
    for (int k = 0; k < 2; ++k) dm += hess(k, m) * std::conj(grad[k]) + grad[k] * RhoJet::levi(m, k);
    lj += L[m] * dm;
  }
  return lj;
}

cplx lbar_derivative_of_rzzLL(const RhoJet& j) {
  const Vec2 L{j.rho_w, -j.rho_z};
  const Vec2 Lbar{std::conj(j.rho_w), -std::conj(j.rho_z)};
  cplx total{};
  for (int m = 0; m < 2; ++m) {
    // d_mbar L = (rho_w,mbar, -rho_z,mbar); rho_jk,mbar = 0 for pluriharmonic f.
    const Vec2 dL{RhoJet::levi(1, m), -RhoJet::levi(0, m)};
    total += Lbar[m] * 2.0 * contract2(j.d2, dL, L);
  }
  return total;
}

}  // namespace umbilic
