#include "netshort/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "netshort/distance.hpp"
#include "netshort/error.hpp"

namespace netshort {

namespace {

std::vector<LocusPoint> sample_locus(const Network& net, int per_edge) {
  if (per_edge < 2) throw Error(ErrorCode::BadParameter, "need at least 2 samples per edge");
  std::vector<LocusPoint> pts;
  pts.reserve(static_cast<size_t>(net.edge_count()) * per_edge);
  for (int e = 0; e < net.edge_count(); ++e)
    for (int i = 0; i < per_edge; ++i)
      pts.push_back(LocusPoint{e, static_cast<double>(i) / (per_edge - 1)});
  return pts;
}

}  // namespace

double sampled_diameter(const Network& net, const OracleConfig& cfg) {
  if (net.edge_count() == 0) return 0.0;
  const DistanceMatrix dm = compute_distances(net);
  const std::vector<LocusPoint> pts = sample_locus(net, cfg.diameter_samples_per_edge);
  double best = 0.0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      best = std::max(best, point_distance(net, dm, pts[i], pts[j]));
  return best;
}

GridSearchResult grid_shortcut_search(const Network& net, const OracleConfig& cfg,
                                      bool simple_only) {
  GridSearchResult out;
  out.base = continuous_diameter(net).value;
  out.diameter = out.base;
  for (int e = 0; e < net.edge_count(); ++e)
    out.spacing = std::max(out.spacing, net.edge_length[e] / (cfg.endpoint_samples_per_edge - 1));

  const std::vector<LocusPoint> pts = sample_locus(net, cfg.endpoint_samples_per_edge);
  auto key = [&](const Candidate& c) {
    return std::make_tuple(c.a.edge, c.a.t, c.b.edge, c.b.t);
  };
  bool have = false;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      Candidate c;
      try {
        c = make_candidate(net, pts[i], pts[j]);
      } catch (const Error& err) {
        if (err.code() == ErrorCode::DegenerateSegment ||
            err.code() == ErrorCode::CollinearOverlap)
          continue;
        throw;
      }
      if (simple_only && !c.crossings.empty()) continue;
      const double d = diameter_with_segment(net, c);
      if (!have || d < out.diameter - 1e-12 ||
          (d <= out.diameter + 1e-12 && key(c) < key(out.best))) {
        out.diameter = have ? std::min(out.diameter, d) : d;
        out.best = c;
        have = true;
      }
    }
  out.found = have;
  if (!have) out.diameter = out.base;
  return out;
}

SpikeFixture gen_spike_fixture(int k, double pq_len) {
  if (k < 2 || k % 2 != 0)
    throw Error(ErrorCode::InfeasibleGeometry, "spike count must be even and at least 2");
  const double w = pq_len;
  const int m = k / 2;
  if (w < static_cast<double>(k) - kGeomEps)
    throw Error(ErrorCode::InfeasibleGeometry, "chord too short for the spikes");

  // Spikes at x = 0.5, 1.5, ... straddle the chord line y = 0: the bases of
  // each spike dip below it, so inserting pq cuts both of its sides. Per
  // side the shape is solved so that
  //   arc from the top down to the cut == x-coordinate of the cut
  // Descending either side and running along the chord then costs exactly
  // the chord position, so every left-top/right-top distance telescopes to
  // |pq| and each top lies at |pq|/2 from the chord midpoint o. A spike with
  // two straight sides cannot satisfy both of its cuts at once (the arcs
  // would have to differ by the full cut gap), so the inner side bends
  // outward at mid height (bulge) and, on the outermost spikes only, the
  // outer side bends at a knee just above the chord. The knee makes the run
  // from p rise into the first cut nearly flat; the kink at that dip vertex
  // costs O(dip^2), keeping the augmented diameter within 1e-7 of |pq|. All
  // feature separations stay at 2e-5 or above, far clear of the 1e-9
  // predicate tolerance.
  constexpr double dip = 5e-5;        // depth of the below-chord vertices
  constexpr double knee_h = 2e-5;     // height of the outermost bend
  constexpr double half_base = 0.01;  // half-width of a spike at the chord

  struct Spike {
    Point base_out, knee, top, bulge, base_in;
    bool has_knee = false;
  };

  std::vector<Spike> spikes(m);
  for (int i = 0; i < m; ++i) {
    const double u = i + 0.5;
    Spike& s = spikes[i];
    s.has_knee = (i == 0);
    s.base_in = Point{u + half_base, -dip};
    double h = 0.0;
    if (s.has_knee) {
      s.base_out = Point{u - 0.05, -dip};
      s.knee = Point{u + 0.005, knee_h};
      const double t = dip / (dip + knee_h);  // cut fraction along base->knee
      const double cut = s.base_out.x + t * (s.knee.x - s.base_out.x);
      const double above = (1.0 - t) * std::hypot(s.knee.x - s.base_out.x, knee_h + dip);
      const double rest = cut - above;  // arc left for the knee->top leg
      const double dx = u - s.knee.x;
      if (rest <= std::abs(dx))
        throw Error(ErrorCode::InfeasibleGeometry, "no room for the outer knee");
      h = s.knee.y + std::sqrt(rest * rest - dx * dx);
    } else {
      s.base_out = Point{u - half_base, -dip};
      auto mismatch = [&](double hh) {  // increasing in hh
        const double t = dip / (dip + hh);
        const double cut = s.base_out.x + t * (u - s.base_out.x);
        return (1.0 - t) * std::hypot(u - s.base_out.x, hh + dip) - cut;
      };
      double lo = 0.0, hi = u + 1.0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mismatch(mid) < 0.0 ? lo : hi) = mid;
      }
      h = 0.5 * (lo + hi);
    }
    s.top = Point{u, h};

    // Inner side top -> bulge -> base: widening the bulge stretches the arc
    // until it matches its cut position.
    auto overshoot = [&](double delta) {
      const Point b{u + delta, 0.5 * h};
      const double t = b.y / (b.y + dip);
      const double cut = b.x + t * (s.base_in.x - b.x);
      const double arc = std::hypot(delta, h - b.y) + t * std::hypot(s.base_in.x - b.x, b.y + dip);
      return arc - cut;
    };
    double lo = 0.0, hi = 0.48;
    if (overshoot(hi) <= 0.0)
      throw Error(ErrorCode::InfeasibleGeometry, "spikes collide at the midpoint");
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (overshoot(mid) < 0.0 ? lo : hi) = mid;
    }
    s.bulge = Point{u + 0.5 * (lo + hi), 0.5 * h};
    if (s.bulge.x >= 0.5 * w - 0.01)
      throw Error(ErrorCode::InfeasibleGeometry, "spikes collide at the midpoint");
  }

  std::vector<Point> pts;
  SpikeFixture fx;
  auto add = [&](Point pt) {
    pts.push_back(pt);
    return static_cast<int>(pts.size()) - 1;
  };

  add(Point{0.0, 0.0});  // p
  for (int i = 0; i < m; ++i) {
    const Spike& s = spikes[i];
    add(s.base_out);
    if (s.has_knee) add(s.knee);
    fx.left_tops.push_back(add(s.top));
    add(s.bulge);
    add(s.base_in);
  }
  for (int i = m - 1; i >= 0; --i) {
    const Spike& s = spikes[i];
    auto mirror = [&](Point pt) { return Point{w - pt.x, pt.y}; };
    add(mirror(s.base_in));
    add(mirror(s.bulge));
    fx.right_tops.push_back(add(mirror(s.top)));
    if (s.has_knee) add(mirror(s.knee));
    add(mirror(s.base_out));
  }
  add(Point{w, 0.0});  // q

  std::vector<std::array<int, 2>> edges;
  for (int v = 0; v + 1 < static_cast<int>(pts.size()); ++v) edges.push_back({v, v + 1});
  fx.net = build_network(pts, edges);
  fx.span = w;
  fx.shortcut = make_candidate(fx.net, vertex_locus_point(fx.net, 0),
                               vertex_locus_point(fx.net, fx.net.vertex_count() - 1));

  // Re-derive the construction's guarantees before handing the fixture out.
  const AugmentedNetwork aug = insert_segment(fx.net, fx.shortcut);
  const DistanceMatrix dm = compute_distances(aug.net);
  for (int a : fx.left_tops)
    for (int b : fx.right_tops)
      if (std::abs(dm(a, b) - w) > 1e-9)
        throw Error(ErrorCode::InfeasibleGeometry, "spike top distance drifted");
  const LocusPoint o = snap_to_locus(aug.net, Point{w / 2.0, 0.0}, 1e-9);
  for (int a : fx.left_tops)
    if (std::abs(vertex_point_distance(aug.net, dm, a, o) - w / 2.0) > 1e-9)
      throw Error(ErrorCode::InfeasibleGeometry, "midpoint-to-top distance drifted");
  if (std::abs(continuous_diameter(aug.net, dm).value - w) > 1e-7)
    throw Error(ErrorCode::InfeasibleGeometry, "augmented diameter is not |pq|");
  return fx;
}

}  // namespace netshort
