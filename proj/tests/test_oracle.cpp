// Closed forms against the finite-difference assembly of the covariant
// derivatives. The oracle never sees the closed forms, so agreement here is
// what pins down A11,^1_1, R,11 and the index lowering in the Cheng-Lee
// formula.

#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "umbilic/ellipsoid.hpp"
#include "umbilic/invariants.hpp"
#include "umbilic/oracle.hpp"
#include "umbilic/sampling.hpp"

using namespace umbilic;

namespace {

InvariantReport closed(const Point4& p, const HolomorphicPolynomial& f) {
  return cartan_q11(contractions(assemble_rho_jet(p, f.jet(p))));
}

double rel(cplx x, cplx y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

}  // namespace

TEST_CASE("oracle on the sphere") {
  for (const Point4& p : random_surface_points(HolomorphicPolynomial{}, 10, 3)) {
    for (double h : {1e-3, 1e-4, 1e-5}) CHECK(std::abs(cartan_q11_oracle(p, HolomorphicPolynomial{}, h).value) <= 1e-9);
  }
}

TEST_CASE("oracle at the hand-checked ellipsoid point") {
  const HolomorphicPolynomial f = HolomorphicPolynomial::ellipsoid(0.5, 0.0);
  const OracleEstimate e = cartan_q11_oracle({{}, {1.0, 0.0}}, f, 1e-4);
  CHECK(std::abs(e.value - 0.125) <= 1e-6);
  CHECK(e.consistent);
}

TEST_CASE("oracle vanishes on a gamma curve for a = b") {
  const EllipsoidParams e{0.3, 0.3};
  const Point4 p = gamma_curve(e, 1, 0.7);
  CHECK(std::abs(cartan_q11_oracle(p, e.f(), 1e-4).value) <= 1e-6);
}

TEST_CASE("covariant blocks agree with their closed forms") {
  for (int trial = 0; trial < 8; ++trial) {
    const HolomorphicPolynomial f = trial < 4 ? testsupport::random_quadratic(700 + trial)
                                              : testsupport::random_f(700 + trial, trial == 7 ? 3 : 4);
    for (const Point4& p : random_surface_points(f, 6, 800 + trial)) {
      const InvariantReport r = closed(p, f);
      const OracleBlocks b = oracle_blocks(p, f, 1e-4);
      CAPTURE(trial);
      CHECK(std::fabs(b.R - r.R) <= 1e-12);
      CHECK(rel(b.A11, r.A11) <= 1e-12);
      CHECK(rel(b.gamma11, r.gamma11) <= 1e-6);
      CHECK(rel(b.gamma01, r.gamma01) <= 1e-6);
      CHECK(rel(b.a11_0, r.a11_0) <= 1e-6);
      CHECK(rel(b.a11_up1_1, r.a11_up1_1) <= 1e-6);
      CHECK(rel(b.r_11, r.r_11) <= 1e-6);
      CHECK(rel(b.Q11, r.Q11) <= 1e-6);
    }
  }
}

TEST_CASE("cubic and quartic terms of Q11") {
  // Q3 and Q4 only matter for f beyond quadratic; a larger perturbation makes
  // them a sizeable part of Q11.
  for (int trial = 0; trial < 6; ++trial) {
    const HolomorphicPolynomial f = testsupport::random_f(900 + trial, 4, 0.15);
    for (const Point4& p : random_surface_points(f, 5, 950 + trial)) {
      const InvariantReport r = closed(p, f);
      CAPTURE(std::abs(r.Q3) + std::abs(r.Q4));
      // derivatives are large here, so take the Richardson value to keep the
      // h^2 truncation out of the comparison
      const OracleEstimate e = cartan_q11_oracle(p, f, 1e-4);
      CHECK(rel(e.extrapolated, r.Q11) <= 1e-6);
      // without Q3 + Q4 the closed form would miss by far more than the tolerance
      CHECK(rel(e.extrapolated, r.Q2) > 1e-4);
      // and with the third/fourth-order signs flipped it would miss as well
      CHECK(rel(e.extrapolated, r.Q2 - r.Q3 - r.Q4) > 1e-4);
    }
  }
}

TEST_CASE("second-order convergence of the oracle") {
  double e1 = 0.0, e2 = 0.0;
  int n = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const HolomorphicPolynomial f = testsupport::random_f(1000 + trial, trial % 2 ? 4 : 2, 0.1);
    for (const Point4& p : random_surface_points(f, 20, 1100 + trial)) {
      const cplx q = closed(p, f).Q11;
      const OracleEstimate est = cartan_q11_oracle(p, f, 1e-3);
      e1 += std::abs(est.value - q);
      e2 += std::abs(est.value_half - q);
      ++n;
      CHECK(est.consistent);
    }
  }
  CHECK(n >= 100);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("oracle preconditions") {
  const HolomorphicPolynomial f = HolomorphicPolynomial::ellipsoid(0.5, 0.2);
  const Point4 p = radial_to_surface({{0.3, 0.2}, {0.5, 0.1}}, f);
  CHECK_THROWS_AS(cartan_q11_oracle(p, f, 1e-7), std::invalid_argument);
  CHECK_THROWS_AS(cartan_q11_oracle(p, f, 1e-2), std::invalid_argument);
  CHECK_THROWS_AS(cartan_q11_oracle({{0.1, 0}, {0.1, 0}}, f, 1e-4), OffSurface);
  CHECK_NOTHROW(cartan_q11_oracle(p, f.jet(p), 1e-4));
  CHECK(std::abs(cartan_q11_oracle(p, f.jet(p), 1e-4).value - closed(p, f).Q11) <= 1e-6);
}
