#pragma once

#include <cmath>

namespace sling {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }

  double length() const { return std::sqrt(x * x + y * y); }
  double length_sq() const { return x * x + y * y; }
  Vec2 normalized() const {
    double l = length();
    return l > 0.0 ? Vec2{x / l, y / l} : Vec2{0.0, 0.0};
  }
  // 90-degree CCW rotation.
  Vec2 perp() const { return {-y, x}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
// Scalar angular velocity cross position vector.
inline Vec2 cross(double w, const Vec2& r) { return {-w * r.y, w * r.x}; }

using Point2 = Vec2;

}  // namespace sling
