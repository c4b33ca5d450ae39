#pragma once

#include <array>
#include <utility>
#include <vector>

#include "sling/pixel_grid.hpp"
#include "sling/vec2.hpp"

namespace sling::geom {

// Maximal 4-connected set of pixels of one class. Pixels are (col, row).
struct PixelSet {
  std::vector<std::pair<int, int>> pixels;
  int class_id = 0;
};

// Convex polygon, vertices counter-clockwise, collinear points pruned.
// Starts at the lexicographically smallest (x, then y) vertex.
struct Hull {
  std::vector<Point2> vertices;
};

// Possibly rotated rectangle. Canonical form: half_w >= half_h,
// angle in [-pi/2, pi/2).
struct OrientedRect {
  Point2 center;
  double half_w = 0.0;
  double half_h = 0.0;
  double angle = 0.0;
};

struct CircleShape {
  Point2 center;
  double radius = 0.0;
};

enum class ShapeKind { Rectangle, Circle };

// Partitions the pixels of `class_id` into maximal 4-connected components,
// ordered by (min row, min col) of each component.
std::vector<PixelSet> flood_fill_components(const PixelGrid& grid, int class_id);

// Monotone-chain hull, CCW, collinear interior points pruned.
// 1 point -> 1-vertex hull; collinear input -> 2-vertex hull.
Hull convex_hull(std::vector<Point2> points);

// Minimum-area enclosing rectangle over all hull-edge-aligned candidates.
// Degenerate extents are clamped to `min_thickness` half-extent.
OrientedRect min_area_rect(const Hull& hull, double min_thickness = 0.5);

struct ClassifyOptions {
  int vertex_threshold = 8;
  double max_circle_aspect = 1.3;
  // Perpendicular deviation used to prune near-collinear hull vertices
  // before counting them.
  double prune_tolerance = 0.5;
};

// Circle iff the pruned hull has more than vertex_threshold vertices and the
// fitted rectangle is close to square; else Rectangle.
ShapeKind classify_shape(const Hull& hull, const OrientedRect& rect,
                         const ClassifyOptions& opts = {});

// Radius assigned when a component classifies as a circle.
inline double circle_radius_from_rect(const OrientedRect& r) {
  return (r.half_w + r.half_h) / 2.0;
}

// Counts hull vertices after pruning those within `tol` perpendicular
// deviation of their neighbors' chord.
int pruned_vertex_count(const Hull& hull, double tol);

// Greedy clustering of (half_w, half_h); members snap to the cluster's
// component-wise median. Centers and angles untouched.
std::vector<OrientedRect> equalize_dimensions(const std::vector<OrientedRect>& rects,
                                              double rel_tol);

// Wraps an angle into [-pi/2, pi/2) (rectangle symmetry is modulo pi).
double canonical_angle(double a);

// Corners of an oriented rectangle, CCW.
std::array<Point2, 4> rect_corners(const OrientedRect& r);

}  // namespace sling::geom
