#pragma once

// Finite-difference estimate of the Cartan tensor, independent of the closed
// forms in invariants.hpp. Only the Gauss-equation forms of R and A11 and the
// Christoffel symbols of the Tanaka-Webster connection enter; every covariant
// derivative is taken by central differences along flows of Re L, Im L, T
// (and N for Gamma_01), with each displaced point pushed back onto M along
// its ray. Arithmetic is carried out in long double so that the nested second
// differences at h = 1e-4 stay well above rounding noise.

#include "umbilic/ambient.hpp"

namespace umbilic {

/// Covariant-derivative blocks assembled by finite differences at one step.
struct OracleBlocks {
  double R = 0.0;
  cplx A11{};
  cplx gamma11{};
  cplx gamma01{};
  cplx a11_0{};      ///< T A11 - 2 Gamma_01 A11
  cplx a11_up1{};    ///< Lbar(A11) / J
  cplx a11_up1_1{};  ///< L(A11^1) - Gamma_11 A11^1
  cplx r_1{};        ///< L R
  cplx r_11{};       ///< L(R_1) - Gamma_11 R_1
  cplx Q11{};        ///< R_11/6 + (i/2) R A11 - A11_0 - (2i/3) A11^1_1
};

struct OracleEstimate {
  cplx value{};         ///< estimate at step h
  cplx value_half{};    ///< estimate at step h/2
  cplx extrapolated{};  ///< Richardson combination (4 v(h/2) - v(h)) / 3
  double ratio = 0.0;   ///< |v(h) - v(h/2)| / |v(h/2) - v(h/4)|, ~4 when second order
  bool consistent = false;
};

inline constexpr double kDefaultOracleStep = 1e-4;

/// Blocks at step h. Throws OffSurface if p is not on M, std::invalid_argument
/// if h lies outside [1e-6, 1e-3].
OracleBlocks oracle_blocks(const Point4& p, const HolomorphicPolynomial& f, double h);

OracleEstimate cartan_q11_oracle(const Point4& p, const HolomorphicPolynomial& f,
                                 double h = kDefaultOracleStep);

/// The jet determines f exactly when f has degree at most four; the oracle
/// works on its Taylor polynomial.
OracleEstimate cartan_q11_oracle(const Point4& p, const HoloJet4& fj, double h = kDefaultOracleStep);

}  // namespace umbilic
