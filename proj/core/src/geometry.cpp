#include "sling/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace sling::geom {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kCollinearEps = 1e-9;  // px^2 cross-product tolerance
}  // namespace

double canonical_angle(double a) {
  a = std::fmod(a, kPi);
  if (a < -kPi / 2.0) a += kPi;
  if (a >= kPi / 2.0) a -= kPi;
  return a;
}

std::array<Point2, 4> rect_corners(const OrientedRect& r) {
  const Vec2 u{std::cos(r.angle), std::sin(r.angle)};
  const Vec2 v = u.perp();
  const Vec2 ew = u * r.half_w;
  const Vec2 eh = v * r.half_h;
  return {r.center - ew - eh, r.center + ew - eh, r.center + ew + eh,
          r.center - ew + eh};
}

std::vector<PixelSet> flood_fill_components(const PixelGrid& grid, int class_id) {
  std::vector<PixelSet> out;
  if (grid.width <= 0 || grid.height <= 0) return out;

  std::vector<char> seen(grid.data.size(), 0);
  std::vector<std::pair<int, int>> stack;

  // Row-major scan guarantees components come out ordered by
  // (min row, min col) of their first-seen pixel, which for 4-connected
  // components is the (min row, min col) pixel of the component's top row.
  for (int row = 0; row < grid.height; ++row) {
    for (int col = 0; col < grid.width; ++col) {
      std::size_t idx = static_cast<std::size_t>(row) * grid.width + col;
      if (seen[idx] || grid.data[idx] != class_id) continue;

      PixelSet comp;
      comp.class_id = class_id;
      stack.clear();
      stack.emplace_back(col, row);
      seen[idx] = 1;
      while (!stack.empty()) {
        auto [c, r] = stack.back();
        stack.pop_back();
        comp.pixels.emplace_back(c, r);
        constexpr int dc[4] = {1, -1, 0, 0};
        constexpr int dr[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          int nc = c + dc[k], nr = r + dr[k];
          if (!grid.in_bounds(nc, nr)) continue;
          std::size_t nidx = static_cast<std::size_t>(nr) * grid.width + nc;
          if (!seen[nidx] && grid.data[nidx] == class_id) {
            seen[nidx] = 1;
            stack.emplace_back(nc, nr);
          }
        }
      }
      std::sort(comp.pixels.begin(), comp.pixels.end(),
                [](const auto& a, const auto& b) {
                  return a.second != b.second ? a.second < b.second
                                              : a.first < b.first;
                });
      out.push_back(std::move(comp));
    }
  }

  std::sort(out.begin(), out.end(), [](const PixelSet& a, const PixelSet& b) {
    return a.pixels.front().second != b.pixels.front().second
               ? a.pixels.front().second < b.pixels.front().second
               : a.pixels.front().first < b.pixels.front().first;
  });
  return out;
}

Hull convex_hull(std::vector<Point2> points) {
  std::sort(points.begin(), points.end(), [](const Point2& a, const Point2& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());

  Hull hull;
  const std::size_t n = points.size();
  if (n <= 2) {
    hull.vertices = std::move(points);
    return hull;
  }

  auto turn = [](const Point2& o, const Point2& a, const Point2& b) {
    return cross(a - o, b - o);
  };

  std::vector<Point2> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && turn(h[k - 2], h[k - 1], points[i]) <= kCollinearEps) --k;
    h[k++] = points[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper chain
    while (k >= t && turn(h[k - 2], h[k - 1], points[i]) <= kCollinearEps) --k;
    h[k++] = points[i];
  }
  h.resize(k - 1);  // last point equals the first

  // Collinear input collapses the chains; keep the two extremes.
  if (h.size() == 1 && n >= 2) {
    h.push_back(points.back());
  }
  hull.vertices = std::move(h);
  return hull;
}

OrientedRect min_area_rect(const Hull& hull, double min_thickness) {
  OrientedRect best;
  const auto& v = hull.vertices;
  if (v.empty()) return best;

  if (v.size() == 1) {
    best.center = v[0];
    best.half_w = best.half_h = min_thickness;
    best.angle = 0.0;
    return best;
  }

  double best_area = std::numeric_limits<double>::infinity();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = v[i];
    const Point2 b = v[(i + 1) % n];
    Vec2 u = (b - a).normalized();
    if (u.length_sq() == 0.0) continue;
    Vec2 w = u.perp();

    double min_u = std::numeric_limits<double>::infinity(), max_u = -min_u;
    double min_w = min_u, max_w = -min_u;
    for (const Point2& p : v) {
      double pu = dot(p, u), pw = dot(p, w);
      min_u = std::min(min_u, pu);
      max_u = std::max(max_u, pu);
      min_w = std::min(min_w, pw);
      max_w = std::max(max_w, pw);
    }
    double ext_u = std::max((max_u - min_u) / 2.0, min_thickness);
    double ext_w = std::max((max_w - min_w) / 2.0, min_thickness);
    double area = 4.0 * ext_u * ext_w;
    if (area < best_area) {
      best_area = area;
      double cu = (min_u + max_u) / 2.0, cw = (min_w + max_w) / 2.0;
      best.center = u * cu + w * cw;
      best.half_w = ext_u;
      best.half_h = ext_w;
      best.angle = std::atan2(u.y, u.x);
    }
  }

  if (best.half_w < best.half_h) {
    std::swap(best.half_w, best.half_h);
    best.angle += kPi / 2.0;
  }
  best.angle = canonical_angle(best.angle);
  return best;
}

int pruned_vertex_count(const Hull& hull, double tol) {
  const auto& v = hull.vertices;
  if (v.size() <= 2) return static_cast<int>(v.size());

  auto deviation = [](const Point2& a, const Point2& mid, const Point2& b) {
    Vec2 chord = b - a;
    double len = chord.length();
    return len > 0.0 ? std::abs(cross(chord, mid - a)) / len : (mid - a).length();
  };

  // Greedy chain simplification: a kept vertex is dropped again when it sits
  // within tol of the chord to the next incoming vertex.
  std::vector<Point2> out;
  for (const Point2& p : v) {
    while (out.size() >= 2 &&
           deviation(out[out.size() - 2], out.back(), p) < tol) {
      out.pop_back();
    }
    out.push_back(p);
  }
  // Close the loop: first and last vertices get the same treatment.
  bool changed = true;
  while (changed && out.size() > 3) {
    changed = false;
    if (deviation(out.back(), out.front(), out[1]) < tol) {
      out.erase(out.begin());
      changed = true;
      continue;
    }
    if (deviation(out[out.size() - 2], out.back(), out.front()) < tol) {
      out.pop_back();
      changed = true;
    }
  }
  return static_cast<int>(out.size());
}

ShapeKind classify_shape(const Hull& hull, const OrientedRect& rect,
                         const ClassifyOptions& opts) {
  int verts = pruned_vertex_count(hull, opts.prune_tolerance);
  double aspect = rect.half_h > 0.0 ? rect.half_w / rect.half_h
                                    : std::numeric_limits<double>::infinity();
  if (verts > opts.vertex_threshold && aspect < opts.max_circle_aspect) {
    return ShapeKind::Circle;
  }
  return ShapeKind::Rectangle;
}

namespace {
double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
}
}  // namespace

std::vector<OrientedRect> equalize_dimensions(const std::vector<OrientedRect>& rects,
                                              double rel_tol) {
  struct Cluster {
    double seed_w, seed_h;
    std::vector<std::size_t> members;
  };
  std::vector<Cluster> clusters;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const auto& r = rects[i];
    bool placed = false;
    for (auto& c : clusters) {
      if (std::abs(r.half_w - c.seed_w) <= rel_tol * c.seed_w &&
          std::abs(r.half_h - c.seed_h) <= rel_tol * c.seed_h) {
        c.members.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({r.half_w, r.half_h, {i}});
  }

  std::vector<OrientedRect> out = rects;
  for (const auto& c : clusters) {
    std::vector<double> ws, hs;
    ws.reserve(c.members.size());
    hs.reserve(c.members.size());
    for (std::size_t i : c.members) {
      ws.push_back(rects[i].half_w);
      hs.push_back(rects[i].half_h);
    }
    double mw = median(std::move(ws));
    double mh = median(std::move(hs));
    for (std::size_t i : c.members) {
      out[i].half_w = mw;
      out[i].half_h = mh;
    }
  }
  return out;
}

}  // namespace sling::geom
