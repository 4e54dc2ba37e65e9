#include "umbilic/invariants.hpp"

#include <cmath>
#include <string>

namespace umbilic {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_nondegenerate(double J, const char* where) {
  if (!(J > 0.0)) {
    throw LeviDegenerate(std::string(where) + ": J[rho] = " + std::to_string(J) + " is not positive");
  }
}

}  // namespace

double webster_scalar_curvature(const FrameContractions& c) {
  require_nondegenerate(c.J, "webster_scalar_curvature");
  const double J = c.J;
  return 2.0 / J - std::norm(c.rzzLL) / (J * J * J);
}

cplx torsion_a11(const FrameContractions& c) {
  require_nondegenerate(c.J, "torsion_a11");
  // i A11 = rho_ZZ(L, L) / J
  return -kI * c.rzzLL / c.J;
}

cplx christoffel_01(const FrameContractions& c) {
  require_nondegenerate(c.J, "christoffel_01");
  const double J = c.J;
  return -kI * (2.0 / J - c.rzzNN / (J * J));
}

cplx christoffel_11(const RhoJet& j) {
  const double J = levi_fefferman(j);
  require_nondegenerate(J, "christoffel_11");
  return l_derivative_of_j(j) / J;
}

cplx a11_covariant_0(const FrameContractions& c) {
  require_nondegenerate(c.J, "a11_covariant_0");
  const double J = c.J;
  const cplx LL = c.rzzLL, NN = c.rzzNN;
  return 2.0 * c.detRzz / J + (2.0 * LL + c.rzzzNLL) / (J * J) +
         LL * (std::conj(NN) - 3.0 * NN) / (J * J * J);
}

cplx a11_covariant_up1_1(const FrameContractions& c) {
  require_nondegenerate(c.J, "a11_covariant_up1_1");
  const double J = c.J, J2 = J * J, J3 = J2 * J, J4 = J3 * J;
  const cplx LL = c.rzzLL, NL = c.rzzNL, NN = c.rzzNN;
  // Leading coefficient is -4: it is what makes the det/J terms of the
  // Cheng-Lee assembly cancel, leaving Q11 proportional to rho_ZZ(L, L) for
  // quadratic f.
  const cplx i_a = -4.0 * c.detRzz / J - (2.0 * LL + 2.0 * c.rzzzNLL) / J2 +
                   (LL * (std::conj(NN) + 6.0 * NN) - c.rzzzLLL * std::conj(NL)) / J3 +
                   LL * (3.0 * std::norm(NL) - std::norm(LL)) / J4;
  return -kI * i_a;
}

cplx r_covariant_11(const FrameContractions& c) {
  require_nondegenerate(c.J, "r_covariant_11");
  const double J = c.J, J2 = J * J, J3 = J2 * J, J4 = J3 * J, J5 = J4 * J;
  const cplx LL = c.rzzLL, NL = c.rzzNL, NN = c.rzzNN, det = c.detRzz;
  const cplx cLL = std::conj(LL), cNL = std::conj(NL);
  const double absLL2 = std::norm(LL), absNL2 = std::norm(NL);
  // L(R,1) - Gamma_11 R,1 with L(LL) = LLL, L(conj LL) = -2 conj NL,
  // L(NL) = NLL + LL - J det and L(LLL) = LLLL + 3 (NL LLL - LL NLL) / J.
  // Easy to get the sign of L(LL) wrong here; the third/fourth-order terms
  // are pinned by the oracle for quartic f.
  return 2.0 * det / J                                                          //
         - (2.0 * LL + 2.0 * c.rzzzNLL) / J2                                    //
         + (6.0 * NL * NL - 3.0 * det * absLL2 - 2.0 * LL * std::conj(NN)) / J3 //
         + (4.0 * c.rzzzLLL * cNL - cLL * c.rzzzzLLLL) / J3                     //
         + LL * (5.0 * absLL2 - 12.0 * absNL2) / J4                             //
         + (6.0 * absLL2 * c.rzzzNLL + 4.0 * cLL * NL * c.rzzzLLL) / J4         //
         - 15.0 * absLL2 * NL * NL / J5;
}

cplx cartan_q2(const FrameContractions& c) {
  require_nondegenerate(c.J, "cartan_q2");
  const double J = c.J, J3 = J * J * J, J4 = J3 * J, J5 = J4 * J;
  const cplx LL = c.rzzLL, NL = c.rzzNL;
  const cplx cLL = std::conj(LL);
  return LL * (-0.5 * cLL * c.detRzz / J3 - 2.0 * std::conj(c.rzzNN) / J3 + std::norm(LL) / J4 -
               4.0 * std::norm(NL) / J4 - 2.5 * cLL * NL * NL / J5);
}

cplx cartan_q3(const FrameContractions& c) {
  require_nondegenerate(c.J, "cartan_q3");
  const double J = c.J, J3 = J * J * J, J4 = J3 * J;
  const cplx LL = c.rzzLL, NL = c.rzzNL;
  const cplx cLL = std::conj(LL);
  return std::norm(LL) * c.rzzzNLL / J4 + (4.0 / 3.0) * std::conj(NL) * c.rzzzLLL / J3 +
         (2.0 / 3.0) * cLL * NL * c.rzzzLLL / J4;
}

cplx cartan_q4(const FrameContractions& c) {
  require_nondegenerate(c.J, "cartan_q4");
  const double J3 = c.J * c.J * c.J;
  return -std::conj(c.rzzLL) * c.rzzzzLLLL / (6.0 * J3);
}

InvariantReport cartan_q11(const FrameContractions& c, double membership_tol) {
  if (!on_surface(c, membership_tol)) {
    throw OffSurface("cartan_q11: point is off the hypersurface (rho = " + std::to_string(c.rho) + ")");
  }
  require_nondegenerate(c.J, "cartan_q11");
  InvariantReport r;
  r.R = webster_scalar_curvature(c);
  r.A11 = torsion_a11(c);
  r.gamma11 = c.rzzNL / c.J;
  r.gamma01 = christoffel_01(c);
  r.a11_0 = a11_covariant_0(c);
  r.a11_up1_1 = a11_covariant_up1_1(c);
  r.r_11 = r_covariant_11(c);
  r.Q2 = cartan_q2(c);
  r.Q3 = cartan_q3(c);
  r.Q4 = cartan_q4(c);
  r.Q11 = r.Q2 + r.Q3 + r.Q4;
  return r;
}

InvariantReport invariants_at(const Point4& p, const JetEvaluator& f, double membership_tol) {
  return cartan_q11(contractions(assemble_rho_jet(p, f(p))), membership_tol);
}

}  // namespace umbilic
