#include "netshort/geometry.hpp"

#include <algorithm>

namespace netshort {

int orientation(Point p, Point q, Point r) {
  const double c = cross(q - p, r - p);
  if (std::fabs(c) <= kGeomEps) return 0;
  return c > 0.0 ? 1 : -1;
}

namespace {

bool in_box(const Segment& s, Point p) {
  const double xlo = std::min(s.a.x, s.b.x) - kGeomEps;
  const double xhi = std::max(s.a.x, s.b.x) + kGeomEps;
  const double ylo = std::min(s.a.y, s.b.y) - kGeomEps;
  const double yhi = std::max(s.a.y, s.b.y) + kGeomEps;
  return p.x >= xlo && p.x <= xhi && p.y >= ylo && p.y <= yhi;
}

}  // namespace

SegmentIntersection segment_intersection(const Segment& s1, const Segment& s2) {
  SegmentIntersection out;
  const int o1 = orientation(s1.a, s1.b, s2.a);
  const int o2 = orientation(s1.a, s1.b, s2.b);
  const int o3 = orientation(s2.a, s2.b, s1.a);
  const int o4 = orientation(s2.a, s2.b, s1.b);

  if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
    // Collinear: intersect the parameter intervals along the longer direction.
    const Point d = s1.b - s1.a;
    const double len2 = dot(d, d);
    if (len2 <= kGeomEps * kGeomEps) {
      // s1 degenerates to a point.
      if (in_box(s2, s1.a) ) {
        out.kind = SegmentIntersection::Kind::Point;
        out.point = s1.a;
      }
      return out;
    }
    double t0 = dot(s2.a - s1.a, d) / len2;
    double t1 = dot(s2.b - s1.a, d) / len2;
    if (t0 > t1) std::swap(t0, t1);
    const double lo = std::max(0.0, t0);
    const double hi = std::min(1.0, t1);
    const double eps_t = kGeomEps / std::sqrt(len2);
    if (lo > hi + eps_t) return out;
    if (hi - lo <= eps_t) {
      out.kind = SegmentIntersection::Kind::Point;
      out.point = point_at(s1, 0.5 * (lo + hi));
      return out;
    }
    out.kind = SegmentIntersection::Kind::Overlap;
    out.overlap = {point_at(s1, lo), point_at(s1, hi)};
    return out;
  }

  const bool proper = (o1 != o2) && (o3 != o4);
  const bool touch = (o1 == 0 && in_box(s1, s2.a)) || (o2 == 0 && in_box(s1, s2.b)) ||
                     (o3 == 0 && in_box(s2, s1.a)) || (o4 == 0 && in_box(s2, s1.b));
  if (!proper && !touch) return out;

  out.kind = SegmentIntersection::Kind::Point;
  if (o1 == 0 && in_box(s1, s2.a)) {
    out.point = s2.a;
  } else if (o2 == 0 && in_box(s1, s2.b)) {
    out.point = s2.b;
  } else if (o3 == 0 && in_box(s2, s1.a)) {
    out.point = s1.a;
  } else if (o4 == 0 && in_box(s2, s1.b)) {
    out.point = s1.b;
  } else {
    const Point r = s1.b - s1.a;
    const Point s = s2.b - s2.a;
    const double denom = cross(r, s);
    double t = cross(s2.a - s1.a, s) / denom;
    t = std::clamp(t, 0.0, 1.0);
    out.point = point_at(s1, t);
  }
  return out;
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Point a, Point b) { return same_point(a, b); }),
            pts.end());
  const size_t n = pts.size();
  if (n <= 2) return pts;

  std::vector<Point> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && orientation(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  const size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {  // upper chain
    while (k >= lower && orientation(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);  // last point repeats the first
  return hull;
}

double closest_param(const Segment& s, Point p) {
  const Point d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 <= kGeomEps * kGeomEps) return 0.0;
  return std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
}

double point_segment_distance(const Segment& s, Point p) {
  return dist(p, point_at(s, closest_param(s, p)));
}

double param_on_segment(const Segment& s, Point p, double eps) {
  const double t = closest_param(s, p);
  if (dist(p, point_at(s, t)) <= eps) return t;
  return -1.0;
}

}  // namespace netshort
