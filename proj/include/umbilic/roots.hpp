#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace umbilic {

class NoPositiveRoot : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// c3 s^3 + c2 s^2 + c1 s + c0.
struct Cubic {
  double c3 = 0.0, c2 = 0.0, c1 = 0.0, c0 = 0.0;

  double operator()(double s) const { return ((c3 * s + c2) * s + c1) * s + c0; }
  double derivative(double s) const { return (3.0 * c3 * s + 2.0 * c2) * s + c1; }
  double max_abs_coeff() const {
    return std::max(std::max(std::fabs(c3), std::fabs(c2)), std::max(std::fabs(c1), std::fabs(c0)));
  }
  /// p(-s), whose positive roots are the negative roots of p.
  Cubic reflected() const { return {-c3, c2, -c1, c0}; }
};

/// Sign changes in the coefficient sequence (zeros skipped): an upper bound on
/// the number of positive roots, with equal parity.
int descartes_sign_changes(const Cubic& p);

/// Newton's method kept inside a sign-changing bracket [lo, hi]; falls back to
/// bisection whenever the Newton step leaves the bracket or stalls.
template <class F, class DF>
double safeguarded_newton(F f, DF df, double lo, double hi, double ftol, int max_iter = 200) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw std::invalid_argument("safeguarded_newton: no sign change on bracket");
  if (flo > 0.0) {
    std::swap(lo, hi);
    std::swap(flo, fhi);
  }
  // now f(lo) < 0 < f(hi), lo and hi may be in either order
  double x = 0.5 * (lo + hi);
  double dx_old = std::fabs(hi - lo), dx = dx_old;
  double fx = f(x), dfx = df(x);
  for (int it = 0; it < max_iter; ++it) {
    const bool newton_leaves = ((x - hi) * dfx - fx) * ((x - lo) * dfx - fx) > 0.0;
    const bool newton_slow = std::fabs(2.0 * fx) > std::fabs(dx_old * dfx);
    dx_old = dx;
    if (newton_leaves || newton_slow) {
      dx = 0.5 * (hi - lo);
      x = lo + dx;
    } else {
      dx = fx / dfx;
      x -= dx;
    }
    fx = f(x);
    dfx = df(x);
    if (std::fabs(fx) <= ftol) return x;
    if (std::fabs(dx) <= 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(x)) return x;
    if (fx < 0.0)
      lo = x;
    else
      hi = x;
  }
  return x;
}

/// The unique positive root of a cubic whose coefficients change sign
/// exactly once. The bracket [0, hi] is found by doubling hi.
double cubic_unique_positive_root(double c3, double c2, double c1, double c0);
double cubic_unique_positive_root(const Cubic& p);

}  // namespace umbilic
