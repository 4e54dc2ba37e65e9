#include "umbilic/roots.hpp"

#include <string>

namespace umbilic {

int descartes_sign_changes(const Cubic& p) {
  const std::array<double, 4> c{p.c3, p.c2, p.c1, p.c0};
  int changes = 0;
  double last = 0.0;
  for (double v : c) {
    if (v == 0.0) continue;
    if (last != 0.0 && (v > 0.0) != (last > 0.0)) ++changes;
    last = v;
  }
  return changes;
}

double cubic_unique_positive_root(const Cubic& p) {
  const int changes = descartes_sign_changes(p);
  if (changes == 0) throw NoPositiveRoot("cubic_unique_positive_root: coefficients never change sign");
  if (changes != 1) {
    throw std::domain_error("cubic_unique_positive_root: " + std::to_string(changes) +
                            " sign changes, positive root not guaranteed unique");
  }
  if (p.c0 == 0.0) throw NoPositiveRoot("cubic_unique_positive_root: s = 0 is a root");

  double hi = 1.0;
  const bool neg_at_zero = p.c0 < 0.0;
  for (int k = 0; (p(hi) < 0.0) == neg_at_zero; ++k) {
    if (k > 200) throw NoPositiveRoot("cubic_unique_positive_root: could not bracket the root");
    hi *= 2.0;
  }
  const double ftol = 1e-15 * p.max_abs_coeff();
  return safeguarded_newton([&](double s) { return p(s); }, [&](double s) { return p.derivative(s); }, 0.0,
                            hi, ftol);
}

double cubic_unique_positive_root(double c3, double c2, double c1, double c0) {
  return cubic_unique_positive_root(Cubic{c3, c2, c1, c0});
}

}  // namespace umbilic
