#pragma once

#include <vector>

#include "minvset/scalar.hpp"

namespace minvset {

/// Finite approximation of a plane set: points in canonical lexicographic
/// (re, im) order with at most one point per eps-cell of the snap grid.
struct PointCloud {
  std::vector<Complex> points;
  double resolution = 1e-3;

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }
};

/// Convex polygon, CCW vertex order. One vertex encodes a point, two a
/// segment; no three retained vertices are collinear.
struct ConvexPolygon {
  std::vector<Complex> vertices;
};

/// Monotone-chain hull; interior and collinear points dropped (collinearity
/// tolerance 1e-12, scaled by the edge lengths).
ConvexPolygon convex_hull(const std::vector<Complex>& points);

/// One representative per eps-cell, keeping the lexicographically smallest
/// member; output in canonical order. Idempotent.
PointCloud grid_snap(const std::vector<Complex>& points, double eps);
PointCloud grid_snap(const PointCloud& cloud, double eps);

/// Exact Hausdorff distance between two nonempty finite clouds, computed
/// with a uniform-grid spatial index (ring search, so the result is exact,
/// the grid only accelerates the scan).
double hausdorff(const PointCloud& a, const PointCloud& b);

/// Directed version: sup over a of the distance to b.
double directed_hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// sup_out: max over the cloud of the distance to the filled polygon
/// (0 for interior points). coverage: max over polygon vertices of the
/// distance to the cloud.
struct PolygonDistance {
  double sup_out = 0.0;
  double coverage = 0.0;
};
PolygonDistance dist_to_polygon(const PointCloud& cloud, const ConvexPolygon& poly);

/// Distance from a point to the filled polygon (0 inside).
double point_to_polygon(const Complex& p, const ConvexPolygon& poly);

/// Grid sample of the filled polygon (segment or point when degenerate),
/// spaced by `step`. Vertices are always included.
std::vector<Complex> sample_filled_polygon(const ConvexPolygon& poly, double step);

}  // namespace minvset
