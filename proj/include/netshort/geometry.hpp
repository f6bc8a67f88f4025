#pragma once

#include <cmath>
#include <vector>

namespace netshort {

// Global geometric tolerance. Coordinates are expected to be desk-scale
// (|x|, |y| up to a few hundred), where this absolute cushion is safe.
inline constexpr double kGeomEps = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(a - b); }

inline bool almost_equal(double a, double b, double eps = kGeomEps) {
  return std::fabs(a - b) <= eps;
}
inline bool same_point(Point a, Point b, double eps = kGeomEps) {
  return almost_equal(a.x, b.x, eps) && almost_equal(a.y, b.y, eps);
}

struct Segment {
  Point a;
  Point b;
};

inline double length(const Segment& s) { return dist(s.a, s.b); }
inline Point lerp(Point a, Point b, double t) { return a + t * (b - a); }
inline Point point_at(const Segment& s, double t) { return lerp(s.a, s.b, t); }

// Sign of the turn p -> q -> r: +1 left (counterclockwise), -1 right, 0 collinear.
// The cushion is applied to the raw cross product magnitude.
int orientation(Point p, Point q, Point r);

struct SegmentIntersection {
  enum class Kind { None, Point, Overlap };
  Kind kind = Kind::None;
  Point point;      // valid when kind == Point
  Segment overlap;  // valid when kind == Overlap; a proper sub-segment
};

// Intersection of two closed segments. Touching endpoints yield Kind::Point;
// collinear contact of positive length yields Kind::Overlap.
SegmentIntersection segment_intersection(const Segment& s1, const Segment& s2);

// Convex hull in counterclockwise order, starting from the lexicographically
// smallest point; interior and collinear-on-edge points are dropped.
std::vector<Point> convex_hull(std::vector<Point> points);

// Parameter in [0,1] of the point on s closest to p.
double closest_param(const Segment& s, Point p);
double point_segment_distance(const Segment& s, Point p);

// Parameter of p along s if p lies on s within eps, else -1.
double param_on_segment(const Segment& s, Point p, double eps = kGeomEps);

inline Point rotate(Point p, double cos_a, double sin_a) {
  return {p.x * cos_a - p.y * sin_a, p.x * sin_a + p.y * cos_a};
}

}  // namespace netshort
