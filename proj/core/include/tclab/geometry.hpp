#pragma once

#include <cmath>
#include <cstdint>

namespace tclab {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
inline double norm_inf(const Vec2& v) { return std::max(std::abs(v.x), std::abs(v.y)); }

// Row-major 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
};

inline Mat2 mat2_identity() { return {1.0, 0.0, 0.0, 1.0}; }

// Max row-sum norm, the operator norm for the sup norm on R^2.
inline double norm_inf(const Mat2& m) {
  return std::max(std::abs(m.a) + std::abs(m.b), std::abs(m.c) + std::abs(m.d));
}

// Reduce to [0, 1).
inline double wrap01(double v) {
  v -= std::floor(v);
  if (v >= 1.0) v -= 1.0;
  if (v < 0.0) v += 1.0;
  return v;
}

// Shortest signed representative of a difference on the circle, in [-0.5, 0.5].
inline double wrap_diff(double d) { return d - std::round(d); }

struct TorusPoint {
  double x = 0.0;
  double y = 0.0;
};

// Squared distance on the 2-torus.
inline double torus_dist2(const TorusPoint& p, const TorusPoint& q) {
  const double dx = wrap_diff(p.x - q.x);
  const double dy = wrap_diff(p.y - q.y);
  return dx * dx + dy * dy;
}

inline double torus_dist(const TorusPoint& p, const TorusPoint& q) {
  return std::sqrt(torus_dist2(p, q));
}

// Rational point on the torus with a common denominator, numerators in [0, den).
struct RationalPoint {
  std::int64_t nx = 0;
  std::int64_t ny = 0;
  std::int64_t den = 1;

  TorusPoint to_point() const {
    return {static_cast<double>(nx) / static_cast<double>(den),
            static_cast<double>(ny) / static_cast<double>(den)};
  }

  // Equality as points of the torus (cross-multiplication, no reduction needed).
  bool same_point(const RationalPoint& o) const {
    return nx * o.den == o.nx * den && ny * o.den == o.ny * den;
  }
};

}  // namespace tclab
