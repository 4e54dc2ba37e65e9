#pragma once

// Numerical extraction of V for 0 < b < a < 1: the common zeros of the two
// sextic cones (ellipsoid.hpp) on the ellipsoid, traced as curves of the
// 3-equation, 4-unknown system {rho = 0, re_s = 0, im_s = 0} by tangent
// prediction and Newton correction (pseudo-arclength).

#include <cstddef>
#include <vector>

#include "umbilic/ellipsoid.hpp"

namespace umbilic {

class TracerFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TraceConfig {
  int seed_grid = 24;          ///< grid cells per Hopf angle on S^3
  double newton_tol = 1e-11;   ///< residual tolerance of the corrector
  int max_newton_iters = 12;
  double step_len = 0.02;      ///< arclength predictor step (also the cap for step growth)
  int max_vertices = 20000;    ///< per component
  bool on_sphere = false;      ///< trace on S^3 and scale the vertices onto the ellipsoid afterwards
  int gamma_samples = kDefaultCurveSamples;

  /// Throws std::invalid_argument unless newton_tol > 0, step_len > 0, seed_grid >= 8.
  void validate() const;
};

struct TracedVertex {
  Point4 p{};
  double rho_residual = 0.0;
  double re_residual = 0.0;
  double im_residual = 0.0;
  double gamma_distance = 0.0;  ///< distance to the sampled gamma curves
  bool singular = false;        ///< Jacobian rank < 3 (within tolerance) here
};

struct TracedComponent {
  std::vector<TracedVertex> vertices;
  bool closed = false;
  bool split = false;  ///< tracing stopped at a singular vertex or exhausted its step budget
};

struct TracedVariety {
  EllipsoidParams params{};
  std::vector<TracedComponent> components;
  std::size_t seeds_converged = 0;

  double max_rho_residual() const;
  double max_sextic_residual() const;
  double min_gamma_distance() const;
  std::size_t vertex_count() const;
};

/// lambda * d with lambda > 0 and rho(lambda d) = 0 (closed-form root of the quadratic).
Point4 scale_to_ellipsoid(const Point4& d, const EllipsoidParams& e);

/// The point built from the negative root tau* of seed_cubic: rho_z = sqrt(-tau*),
/// rho_w = i, scaled onto the ellipsoid. It lies on V exactly up to rounding.
Point4 cubic_seed_point(const EllipsoidParams& e);

/// Newton-corrected seeds: the cubic seed point and its images under conjugation
/// and (z, w) -> (-z, -w) (must converge), plus grid seeds from cells of a
/// Hopf-angle grid where both sextics change sign. Duplicates within step_len
/// are dropped. Throws InvalidParameters unless 0 < b < a.
std::vector<Point4> seed_points(const EllipsoidParams& e, const TraceConfig& cfg);

TracedVariety trace_variety(const EllipsoidParams& e, const TraceConfig& cfg = {});

/// Closed-form gamma curves as vertex lists (b > 0), used for distance reporting.
std::vector<std::vector<Point4>> gamma_polylines(const EllipsoidParams& e, int samples = kDefaultCurveSamples);

std::vector<std::vector<Point4>> component_polylines(const TracedVariety& v);

}  // namespace umbilic
