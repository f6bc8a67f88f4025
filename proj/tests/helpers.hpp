#pragma once

// Fixture builders and random generators shared by the unit and acceptance
// suites. All randomness is seeded by the caller so every run is identical.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "netshort/augment.hpp"
#include "netshort/network.hpp"

namespace netshort::testing {

inline Network square_net() {
  return build_network({{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                       {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

// Arms of length sqrt(2) meeting at the origin, tips at y = 1.
inline Network vpath_net() {
  return build_network({{-1, 1}, {0, 0}, {1, 1}}, {{0, 1}, {1, 2}});
}

inline Network straight_path(double len, int edges) {
  std::vector<Point> pts;
  std::vector<std::array<int, 2>> es;
  for (int i = 0; i <= edges; ++i) pts.push_back({len * i / edges, 0.0});
  for (int i = 0; i < edges; ++i) es.push_back({i, i + 1});
  return build_network(pts, es);
}

inline Network spath_net() {
  return build_network({{0, 0}, {4, 0}, {4, 1}, {0, 1}, {0, 2}, {4, 2}},
                       {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
}

inline Network upath_net() {
  return build_network({{0, 0}, {2, 0}, {2, 2}, {0, 2}}, {{0, 1}, {1, 2}, {2, 3}});
}

// W-shaped path whose middle peak blocks the unconstrained optimum: the best
// simple shortcut is a limit through the peak vertex (2, 1.2).
inline Network blocked_w_path() {
  return build_network({{0, 2}, {1, 0}, {2, 1.2}, {3, 0}, {4, 2}},
                       {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
}

// Same shape with a shallow peak (2, 0.5): the optimum is attained above it,
// yet the hull-augmented network has a non-convex face.
inline Network shallow_w_path() {
  return build_network({{0, 2}, {1, 0}, {2, 0.5}, {3, 0}, {4, 2}},
                       {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
}

// Horizontal shortcut across both outer legs of a W-shaped path.
inline std::optional<Candidate> w_leg_chord(const Network& net, double y) {
  const double t = (2.0 - y) / 2.0;
  const Point p{t, y};
  const Point q{4.0 - t, y};
  try {
    return make_candidate(net, snap_to_locus(net, p, 1e-6), snap_to_locus(net, q, 1e-6));
  } catch (const Error&) {
    return std::nullopt;
  }
}

// x-monotone polyline: never self-crossing, generic position.
inline Network random_monotone_path(std::mt19937& rng, int vertices) {
  std::uniform_real_distribution<double> dx(0.5, 1.5), dy(-1.5, 1.5);
  std::vector<Point> pts;
  double x = 0.0;
  for (int i = 0; i < vertices; ++i) {
    pts.push_back({x, dy(rng)});
    x += dx(rng);
  }
  std::vector<std::array<int, 2>> es;
  for (int i = 0; i + 1 < vertices; ++i) es.push_back({i, i + 1});
  return build_network(pts, es);
}

// Random connected planar network: a spanning path over well-separated points
// plus a few non-crossing chords. Retries until the layout is admissible.
inline std::optional<Network> try_random_planar_net(std::mt19937& rng, int vertices,
                                                    int extra_edges) {
  std::uniform_real_distribution<double> coord(0.0, 6.0);
  std::vector<Point> pts;
  int placement_tries = 0;
  while (static_cast<int>(pts.size()) < vertices) {
    if (++placement_tries > 400) return std::nullopt;
    const Point p{coord(rng), coord(rng)};
    bool ok = true;
    for (const Point& q : pts)
      if (dist(p, q) < 0.6) ok = false;
    if (ok) pts.push_back(p);
  }
  std::vector<int> order(pts.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::array<int, 2>> edges;
  // Geometric admissibility: no proper crossing, no overlap, no vertex in
  // the open interior. Connectivity comes from the spanning pass below.
  auto attempt = [&](int a, int b) {
    if (a == b) return false;
    for (const auto& e : edges)
      if ((e[0] == a && e[1] == b) || (e[0] == b && e[1] == a)) return false;
    for (size_t k = 0; k < pts.size(); ++k) {
      if (static_cast<int>(k) == a || static_cast<int>(k) == b) continue;
      if (point_segment_distance(Segment{pts[a], pts[b]}, pts[k]) < 1e-6) return false;
    }
    for (const auto& e : edges) {
      const auto hit =
          segment_intersection(Segment{pts[a], pts[b]}, Segment{pts[e[0]], pts[e[1]]});
      if (hit.kind == SegmentIntersection::Kind::Overlap) return false;
      if (hit.kind == SegmentIntersection::Kind::Point) {
        const bool shared = e[0] == a || e[0] == b || e[1] == a || e[1] == b;
        if (!shared) return false;
        if (dist(hit.point, pts[a]) > 1e-9 && dist(hit.point, pts[b]) > 1e-9) return false;
      }
    }
    edges.push_back({a, b});
    return true;
  };
  for (size_t i = 0; i + 1 < order.size(); ++i) {
    if (attempt(order[i], order[i + 1])) continue;
    bool linked = false;
    for (size_t j = 0; j < i + 1 && !linked; ++j)
      linked = attempt(order[j], order[i + 1]);
    if (!linked) return std::nullopt;
  }
  std::uniform_int_distribution<int> pick(0, vertices - 1);
  for (int tries = 0; tries < 20 && extra_edges > 0; ++tries)
    if (attempt(pick(rng), pick(rng))) --extra_edges;
  try {
    return build_network(pts, edges);
  } catch (const Error&) {
    return std::nullopt;
  }
}

inline Network random_planar_net(std::mt19937& rng, int vertices, int extra_edges) {
  for (;;) {
    auto net = try_random_planar_net(rng, vertices, extra_edges);
    if (net) return *net;
  }
}

inline LocusPoint random_locus_point(std::mt19937& rng, const Network& net) {
  std::uniform_int_distribution<int> pick(0, net.edge_count() - 1);
  std::uniform_real_distribution<double> t(0.0, 1.0);
  return {pick(rng), t(rng)};
}

inline std::optional<Candidate> random_maximal_candidate(std::mt19937& rng, const Network& net,
                                                         int tries = 40) {
  for (int i = 0; i < tries; ++i) {
    const LocusPoint a = random_locus_point(rng, net);
    const LocusPoint b = random_locus_point(rng, net);
    try {
      return maximal_extension(net, make_candidate(net, a, b));
    } catch (const Error&) {
      continue;
    }
  }
  return std::nullopt;
}

// Geometric realizations of the two-chain arithmetic fixtures. Each diameter
// is dominated by a single chain pair of the intended kind.
struct RealizedFixture {
  Network net;
  Candidate shortcut;
  double expected = 0.0;
};

// Disjoint pair: D_i=3, gap=2, D_j=2 -> 7.
inline RealizedFixture disjoint_fixture() {
  RealizedFixture fx;
  const double h1 = std::sqrt(3.0);
  const double h2 = std::sqrt(2.0);
  fx.net = build_network(
      {{0, 0}, {1, h1}, {2, 0}, {3, 0.05}, {4, 0}, {4.5, h2}, {5, 0}},
      {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
  fx.shortcut = make_candidate(fx.net, vertex_locus_point(fx.net, 0),
                               vertex_locus_point(fx.net, 6));
  fx.expected = 7.0;
  return fx;
}

// Nested pair: outer |C|=10 spanning the shortcut, inner |C|=2 -> 9.5.
inline RealizedFixture nested_fixture() {
  RealizedFixture fx;
  const double h = std::sqrt(0.75);
  fx.net = build_network(
      {{1, 0}, {5, 3}, {9, 0}, {7, -0.7}, {5, 0}, {4.5, -h}, {4, 0}},
      {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
  fx.shortcut = make_candidate(fx.net, vertex_locus_point(fx.net, 0),
                               vertex_locus_point(fx.net, 2));
  fx.expected = 9.5;
  return fx;
}

// Overlapping pair: |C_i|=6 over [0,4], |C_j|=7 over [2,7] -> 9.
inline RealizedFixture overlapping_fixture() {
  RealizedFixture fx;
  const double hi = std::sqrt(5.0);
  const double hj = std::sqrt(6.0);
  fx.net = build_network(
      {{1, 0}, {3, hi}, {5, 0}, {4, -0.3}, {3, 0}, {5.5, -hj}, {8, 0}},
      {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
  fx.shortcut = make_candidate(fx.net, vertex_locus_point(fx.net, 0),
                               vertex_locus_point(fx.net, 6));
  fx.expected = 9.0;
  return fx;
}

// Pendant star: inserting a chord between two adjacent tips worsens the
// diameter (points of the chord are far from the opposite tips).
inline Network star_net() {
  return build_network({{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}},
                       {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
}

}  // namespace netshort::testing
