#include "umbilic/oracle.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace umbilic {

namespace {

using real = long double;
using lcplx = std::complex<long double>;

constexpr lcplx kI{0.0L, 1.0L};

struct Pt {
  lcplx z, w;
};

Pt operator+(const Pt& p, const Pt& q) { return {p.z + q.z, p.w + q.w}; }
Pt operator*(lcplx s, const Pt& p) { return {s * p.z, s * p.w}; }

// Holomorphic polynomial with long double coefficients, centered at c.
class Poly {
 public:
  explicit Poly(const HolomorphicPolynomial& f) : cz_(f.center().z), cw_(f.center().w) {
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; i + j <= 4; ++j) c_[i][j] = lcplx(f.coeff(i, j));
  }

  // d^(p+q) f / dz^p dw^q
  lcplx d(const Pt& at, int p, int q) const {
    const lcplx dz = at.z - cz_, dw = at.w - cw_;
    lcplx s{};
    for (int i = p; i <= 4; ++i)
      for (int j = q; i + j <= 4; ++j) {
        if (c_[i][j] == lcplx{}) continue;
        lcplx t = c_[i][j];
        for (int k = 0; k < p; ++k) t *= static_cast<real>(i - k);
        for (int k = 0; k < q; ++k) t *= static_cast<real>(j - k);
        for (int k = 0; k < i - p; ++k) t *= dz;
        for (int k = 0; k < j - q; ++k) t *= dw;
        s += t;
      }
    return s;
  }

 private:
  lcplx cz_, cw_;
  lcplx c_[5][5]{};
};

// Everything the Gauss forms need at one point.
struct Local {
  real rho, J;
  lcplx rz, rw;      // rho_z, rho_w
  lcplx fzz, fzw, fww;
  lcplx L[2], xi[2]; // L and xi = N / (|rho_z|^2 + |rho_w|^2)
  lcplx N[2];
  lcplx LL;          // rho_ZZ(L, L)
};

class Flow {
 public:
  Flow(const Poly& f, real h) : f_(f), h_(h) {}

  Local local(const Pt& q) const {
    Local s;
    const lcplx fv = f_.d(q, 0, 0);
    s.rho = -1.0L + std::norm(q.z) + std::norm(q.w) + 2.0L * fv.real();
    s.rz = std::conj(q.z) + f_.d(q, 1, 0);
    s.rw = std::conj(q.w) + f_.d(q, 0, 1);
    s.fzz = f_.d(q, 2, 0);
    s.fzw = f_.d(q, 1, 1);
    s.fww = f_.d(q, 0, 2);
    const real g2 = std::norm(s.rz) + std::norm(s.rw);
    s.J = g2 - s.rho;
    s.L[0] = s.rw;
    s.L[1] = -s.rz;
    s.N[0] = std::conj(s.rz);
    s.N[1] = std::conj(s.rw);
    s.xi[0] = s.N[0] / g2;
    s.xi[1] = s.N[1] / g2;
    s.LL = s.fzz * s.L[0] * s.L[0] + 2.0L * s.fzw * s.L[0] * s.L[1] + s.fww * s.L[1] * s.L[1];
    return s;
  }

  // Moves q radially onto rho = 0.
  Pt project(const Pt& q) const {
    real lam = 1.0L;
    for (int it = 0; it < 50; ++it) {
      const Pt p = lcplx(lam) * q;
      const Local s = local(p);
      const real dg = 2.0L * (s.rz * q.z + s.rw * q.w).real();
      const real step = s.rho / dg;
      lam -= step;
      if (std::fabs(step) <= 4.0L * std::numeric_limits<real>::epsilon() * std::fabs(lam)) break;
    }
    return lcplx(lam) * q;
  }

  using Fn = std::function<lcplx(const Pt&)>;

  // d/ds F(q + s u) at s = 0 by central differences; tangent flows are
  // re-projected onto M, transverse ones are not.
  lcplx directional(const Fn& F, const Pt& q, const lcplx u[2], bool tangent) const {
    const Pt du{u[0], u[1]};
    Pt plus = q + lcplx(h_) * du;
    Pt minus = q + lcplx(-h_) * du;
    if (tangent) {
      plus = project(plus);
      minus = project(minus);
    }
    return (F(plus) - F(minus)) / (2.0L * h_);
  }

  // V F and Vbar F for a (1,0) vector V, from the real flows of V and iV.
  lcplx holo(const Fn& F, const Pt& q, const lcplx V[2], bool tangent) const {
    const lcplx iV[2]{kI * V[0], kI * V[1]};
    return (directional(F, q, V, tangent) - kI * directional(F, q, iV, tangent)) / 2.0L;
  }
  lcplx antiholo(const Fn& F, const Pt& q, const lcplx V[2], bool tangent) const {
    const lcplx iV[2]{kI * V[0], kI * V[1]};
    return (directional(F, q, V, tangent) + kI * directional(F, q, iV, tangent)) / 2.0L;
  }

  lcplx along_L(const Fn& F, const Pt& q) const { return holo(F, q, local(q).L, true); }
  lcplx along_Lbar(const Fn& F, const Pt& q) const { return antiholo(F, q, local(q).L, true); }
  lcplx along_N(const Fn& F, const Pt& q) const { return holo(F, q, local(q).N, false); }
  // T = i(xi - xibar) is the real field whose flow displaces by i xi.
  lcplx along_T(const Fn& F, const Pt& q) const {
    const Local s = local(q);
    const lcplx u[2]{kI * s.xi[0], kI * s.xi[1]};
    return directional(F, q, u, true);
  }

 private:
  const Poly& f_;
  real h_;
};

OracleBlocks blocks_at(const Pt& p, const Poly& poly, real h) {
  const Flow flow(poly, h);

  const Flow::Fn J = [&](const Pt& q) { return lcplx(flow.local(q).J); };
  const Flow::Fn R = [&](const Pt& q) {
    const Local s = flow.local(q);
    return lcplx(2.0L / s.J - std::norm(s.LL) / (s.J * s.J * s.J));
  };
  const Flow::Fn A11 = [&](const Pt& q) {
    const Local s = flow.local(q);
    return -kI * s.LL / s.J;
  };
  const Flow::Fn gamma11 = [&](const Pt& q) { return flow.along_L(J, q) / J(q); };
  const Flow::Fn a11_up1 = [&](const Pt& q) { return flow.along_Lbar(A11, q) / J(q); };
  const Flow::Fn r_1 = [&](const Pt& q) { return flow.along_L(R, q); };

  OracleBlocks b;
  const lcplx Jp = J(p);
  const lcplx g11 = gamma11(p);
  // Gamma_01 = (i / J) (N log J - 2 det rho_{Z Zbar}), Levi block = identity.
  const lcplx g01 = kI / Jp * (flow.along_N(J, p) / Jp - 2.0L);
  const lcplx Rp = R(p), Ap = A11(p);
  const lcplx a0 = flow.along_T(A11, p) - 2.0L * g01 * Ap;
  const lcplx up = a11_up1(p);
  const lcplx up1 = flow.along_L(a11_up1, p) - g11 * up;
  const lcplx r1 = r_1(p);
  const lcplx r11 = flow.along_L(r_1, p) - g11 * r1;
  const lcplx q = r11 / 6.0L + kI / 2.0L * Rp * Ap - a0 - 2.0L * kI / 3.0L * up1;

  auto c = [](lcplx v) { return cplx(static_cast<double>(v.real()), static_cast<double>(v.imag())); };
  b.R = static_cast<double>(Rp.real());
  b.A11 = c(Ap);
  b.gamma11 = c(g11);
  b.gamma01 = c(g01);
  b.a11_0 = c(a0);
  b.a11_up1 = c(up);
  b.a11_up1_1 = c(up1);
  b.r_1 = c(r1);
  b.r_11 = c(r11);
  b.Q11 = c(q);
  return b;
}

void check_step(double h) {
  if (!(h >= 1e-6 && h <= 1e-3)) {
    throw std::invalid_argument("cartan_q11_oracle: step " + std::to_string(h) +
                                " outside [1e-6, 1e-3]");
  }
}

Pt checked_start(const Point4& p, const HolomorphicPolynomial& f, const Poly& poly, real h) {
  if (!on_surface(rho_value(p, f.value(p)), p.norm2())) {
    throw OffSurface("cartan_q11_oracle: point is off the hypersurface");
  }
  return Flow(poly, h).project({lcplx(p.z), lcplx(p.w)});
}

}  // namespace

OracleBlocks oracle_blocks(const Point4& p, const HolomorphicPolynomial& f, double h) {
  check_step(h);
  const Poly poly(f);
  return blocks_at(checked_start(p, f, poly, h), poly, h);
}

OracleEstimate cartan_q11_oracle(const Point4& p, const HolomorphicPolynomial& f, double h) {
  check_step(h);
  const Poly poly(f);
  const Pt start = checked_start(p, f, poly, h);
  const cplx v1 = blocks_at(start, poly, h).Q11;
  const cplx v2 = blocks_at(start, poly, h / 2).Q11;
  const cplx v4 = blocks_at(start, poly, h / 4).Q11;

  OracleEstimate e;
  e.value = v1;
  e.value_half = v2;
  e.extrapolated = (4.0 * v2 - v1) / 3.0;
  const double d12 = std::abs(v1 - v2), d24 = std::abs(v2 - v4);
  const double scale = 1.0 + std::abs(v1);
  e.ratio = d24 > 0.0 ? d12 / d24 : 0.0;
  const bool truncation_ok = d12 <= 1e-3 * scale;
  const bool at_noise_floor = d24 <= 1e-12 * scale;
  e.consistent = truncation_ok && (at_noise_floor || (e.ratio >= 2.0 && e.ratio <= 8.0));
  return e;
}

OracleEstimate cartan_q11_oracle(const Point4& p, const HoloJet4& fj, double h) {
  return cartan_q11_oracle(p, HolomorphicPolynomial::from_jet(p, fj), h);
}

}  // namespace umbilic
