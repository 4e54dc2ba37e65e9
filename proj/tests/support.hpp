#pragma once

#include <random>

#include "umbilic/ambient.hpp"

namespace testsupport {

// f with small random coefficients of total degree 2..max_degree, so that the
// origin stays inside M and J stays positive.
inline umbilic::HolomorphicPolynomial random_f(std::uint64_t seed, int max_degree, double scale = 0.08) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  umbilic::HolomorphicPolynomial f;
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= max_degree; ++j)
      if (i + j >= 2) f.coeff(i, j) = scale * umbilic::cplx(u(rng), u(rng));
  return f;
}

// quadratic f = (a z^2 + 2 c z w + b w^2) / 2 with complex a, b, c
inline umbilic::HolomorphicPolynomial random_quadratic(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> r(0.0, 0.9), ph(0.0, 6.283185307179586);
  umbilic::HolomorphicPolynomial f;
  // |a| + |b| + 2|c| < 1 keeps rho's real Hessian positive definite
  const double ma = 0.45 * r(rng), mb = 0.45 * r(rng), mc = 0.2 * r(rng);
  f.coeff(2, 0) = std::polar(ma, ph(rng)) / 2.0;
  f.coeff(0, 2) = std::polar(mb, ph(rng)) / 2.0;
  f.coeff(1, 1) = std::polar(mc, ph(rng));
  return f;
}

}  // namespace testsupport
