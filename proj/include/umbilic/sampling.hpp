#pragma once

// Point sampling on M and Euclidean distances to sampled curves in R^4.

#include <cstdint>
#include <vector>

#include "umbilic/ambient.hpp"
#include "umbilic/ellipsoid.hpp"

namespace umbilic {

/// The point where the ray t * dir (t > 0) first crosses rho = 0. Throws
/// std::domain_error if rho is not negative at the origin or the ray never
/// leaves {rho < 0} within |p| <= 16.
Point4 radial_to_surface(const Point4& dir, const HolomorphicPolynomial& f);

/// n points of M along directions drawn uniformly from S^3 (mt19937_64).
/// Directions whose ray misses M are redrawn.
std::vector<Point4> random_surface_points(const HolomorphicPolynomial& f, int n, std::uint64_t seed);
std::vector<Point4> random_ellipsoid_points(const EllipsoidParams& e, int n, std::uint64_t seed);

/// Two-angle chart of the ellipsoid from its diagonal real form
/// (1+a)x^2 + (1-a)y^2 + (1+b)u^2 + (1-b)v^2 = 1:
///   z = cos(eta) (cos(phi)/sqrt(1+a) + i sin(phi)/sqrt(1-a))
///   w = sin(eta) (cos(phi)/sqrt(1+b) + i sin(phi)/sqrt(1-b))
/// for eta in [0, pi/2], phi in [0, 2 pi). Points with the same phase in z and
/// w only; the grid is for plotting fields, not for covering M.
Point4 torus_chart(const EllipsoidParams& e, double eta, double phi);

/// Full 3-angle chart, used for dense sweeps: eta in [0, pi/2] and independent
/// phases phi (for z) and psi (for w).
Point4 ellipsoid_chart(const EllipsoidParams& e, double eta, double phi, double psi);

double segment_distance(const Point4& p, const Point4& a, const Point4& b);

/// Distance from p to the polyline through `pts` (closed adds the last-first segment).
double polyline_distance(const Point4& p, const std::vector<Point4>& pts, bool closed);

/// Distance from p to the union of several polylines.
double distance_to_curves(const Point4& p, const std::vector<std::vector<Point4>>& curves, bool closed);

/// Directed Hausdorff distance sup_{p in from} dist(p, to-polyline).
double directed_hausdorff(const std::vector<Point4>& from, const std::vector<std::vector<Point4>>& to,
                          bool closed);

std::vector<Point4> vertices_of(const LocusCurve& c);

}  // namespace umbilic
