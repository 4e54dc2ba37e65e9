#pragma once

// Closed-form pseudohermitian invariants of a pluriharmonic perturbation of
// the sphere, for the contact form theta = i dbar(rho) restricted to M and
// the frame Z_1 = L.

#include "umbilic/ambient.hpp"

namespace umbilic {

/// Thrown when J <= 0: the hypersurface is Levi-degenerate (or not strictly
/// pseudoconvex) at the point.
class LeviDegenerate : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct InvariantReport {
  double R = 0.0;      ///< Webster scalar curvature
  cplx A11{};          ///< torsion
  cplx gamma11{};      ///< Christoffel symbol Gamma_11^1
  cplx gamma01{};      ///< Christoffel symbol Gamma_01^1
  cplx a11_0{};        ///< A_{11,0}
  cplx a11_up1_1{};    ///< A_{11,}^1_1
  cplx r_11{};         ///< R_{,11}
  cplx Q2{};
  cplx Q3{};
  cplx Q4{};
  cplx Q11{};          ///< Cartan tensor component, Q2 + Q3 + Q4
};

double webster_scalar_curvature(const FrameContractions& c);
cplx torsion_a11(const FrameContractions& c);
cplx christoffel_01(const FrameContractions& c);

/// L log J by chain rule. On M this equals rho_ZZ(N, L) / J.
cplx christoffel_11(const RhoJet& j);

cplx a11_covariant_0(const FrameContractions& c);
cplx a11_covariant_up1_1(const FrameContractions& c);
cplx r_covariant_11(const FrameContractions& c);

/// The three parts of Q11 grouped by the highest jet order they involve.
cplx cartan_q2(const FrameContractions& c);
cplx cartan_q3(const FrameContractions& c);
cplx cartan_q4(const FrameContractions& c);

/// Full report at an on-surface point. Throws OffSurface when |rho| exceeds
/// the membership tolerance.
InvariantReport cartan_q11(const FrameContractions& c, double membership_tol = kMembershipTol);

/// Convenience: jets -> contractions -> report.
InvariantReport invariants_at(const Point4& p, const JetEvaluator& f,
                              double membership_tol = kMembershipTol);

}  // namespace umbilic
