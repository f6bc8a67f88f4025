#include "netshort/augment.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <map>

#include "netshort/error.hpp"

namespace netshort {

LineContacts line_locus_contacts(const Network& net, const Point& origin, const Point& dir) {
  const double dn = norm(dir);
  if (dn <= kGeomEps)
    throw Error(ErrorCode::DegenerateSegment, "line direction has zero length");
  const Point d{dir.x / dn, dir.y / dn};

  LineContacts lc;
  lc.origin = origin;
  lc.dir = d;

  struct Raw {
    double s;
    Point pos;
    LocusPoint where;
    int vertex;
  };
  std::vector<Raw> raw;

  for (int e = 0; e < net.edge_count(); ++e) {
    const Point p0 = net.vertices[net.edges[e][0]];
    const Point p1 = net.vertices[net.edges[e][1]];
    // Signed perpendicular distance of each endpoint from the line.
    const double f0 = cross(d, p0 - origin);
    const double f1 = cross(d, p1 - origin);
    const double s0 = dot(p0 - origin, d);
    const double s1 = dot(p1 - origin, d);
    if (std::abs(f0) <= kGeomEps && std::abs(f1) <= kGeomEps) {
      lc.overlaps.push_back({std::min(s0, s1), std::max(s0, s1), e});
      raw.push_back({s0, p0, LocusPoint{e, 0.0}, net.edges[e][0]});
      raw.push_back({s1, p1, LocusPoint{e, 1.0}, net.edges[e][1]});
      continue;
    }
    double t;
    if (std::abs(f0) <= kGeomEps)
      t = 0.0;
    else if (std::abs(f1) <= kGeomEps)
      t = 1.0;
    else if ((f0 > 0.0) != (f1 > 0.0))
      t = f0 / (f0 - f1);
    else
      continue;
    const Point pos = lerp(p0, p1, t);
    const double eps_t = kGeomEps / std::max(net.edge_length[e], kGeomEps);
    int v = -1;
    if (t <= eps_t)
      v = net.edges[e][0];
    else if (t >= 1.0 - eps_t)
      v = net.edges[e][1];
    raw.push_back({dot(pos - origin, d), pos, LocusPoint{e, t}, v});
  }

  std::sort(raw.begin(), raw.end(), [](const Raw& x, const Raw& y) {
    if (x.s != y.s) return x.s < y.s;
    return x.where.edge < y.where.edge;
  });
  for (const Raw& r : raw) {
    if (!lc.contacts.empty() && r.s - lc.contacts.back().s <= kGeomEps) {
      LineContact& back = lc.contacts.back();
      if (back.vertex < 0 && r.vertex >= 0) {
        back.vertex = r.vertex;
        back.where = vertex_locus_point(net, r.vertex);
        back.pos = net.vertices[r.vertex];
      }
      continue;
    }
    LineContact ct;
    ct.s = r.s;
    ct.pos = r.vertex >= 0 ? net.vertices[r.vertex] : r.pos;
    ct.where = r.vertex >= 0 ? vertex_locus_point(net, r.vertex) : r.where;
    ct.vertex = r.vertex;
    lc.contacts.push_back(ct);
  }
  std::sort(lc.overlaps.begin(), lc.overlaps.end(),
            [](const LineContacts::Interval& x, const LineContacts::Interval& y) {
              return x.lo < y.lo;
            });
  return lc;
}

LocusPoint snap_to_locus(const Network& net, const Point& p, double eps) {
  int best_v = -1;
  double best = eps;
  for (int v = 0; v < net.vertex_count(); ++v) {
    const double dv = dist(p, net.vertices[v]);
    if (dv <= best) {
      best = dv;
      best_v = v;
    }
  }
  if (best_v >= 0) return vertex_locus_point(net, best_v);

  int best_e = -1;
  double best_t = 0.0;
  best = eps;
  for (int e = 0; e < net.edge_count(); ++e) {
    const Segment s = net.edge_segment(e);
    const double de = point_segment_distance(s, p);
    if (de <= best) {
      best = de;
      best_e = e;
      best_t = closest_param(s, p);
    }
  }
  if (best_e < 0)
    throw Error(ErrorCode::EndpointOffLocus, "point does not lie on the network");
  return normalize(net, LocusPoint{best_e, best_t});
}

Candidate make_candidate(const Network& net, const LocusPoint& a, const LocusPoint& b) {
  Candidate c;
  c.a = normalize(net, a);
  c.b = normalize(net, b);
  const Point pa = locate(net, c.a);
  const Point pb = locate(net, c.b);
  const double len = dist(pa, pb);
  if (len <= kGeomEps || same_locus_point(net, c.a, c.b))
    throw Error(ErrorCode::DegenerateSegment, "candidate endpoints coincide");
  c.seg = Segment{pa, pb};

  const LineContacts lc = line_locus_contacts(net, pa, pb - pa);
  for (const auto& ov : lc.overlaps)
    if (ov.lo < len - kGeomEps && ov.hi > kGeomEps)
      throw Error(ErrorCode::CollinearOverlap, "candidate runs along an edge");

  for (const LineContact& ct : lc.contacts) {
    if (ct.s <= kGeomEps || ct.s >= len - kGeomEps) continue;
    Candidate::Crossing x;
    x.edge = ct.where.edge;
    x.pos = ct.pos;
    x.t_seg = ct.s / len;
    x.t_edge = ct.where.t;
    x.vertex = ct.vertex;
    c.crossings.push_back(x);
  }
  return c;
}

AugmentedNetwork insert_segment(const Network& net, const Candidate& c) {
  AugmentedNetwork aug;
  aug.candidate = c;

  std::vector<Point> pts = net.vertices;
  aug.base_vertex.resize(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) aug.base_vertex[i] = static_cast<int>(i);

  auto add_point = [&](const Point& p) {
    for (size_t i = 0; i < pts.size(); ++i)
      if (same_point(pts[i], p)) return static_cast<int>(i);
    pts.push_back(p);
    aug.base_vertex.push_back(-1);
    return static_cast<int>(pts.size()) - 1;
  };

  // edge -> interior split positions (t, new vertex id)
  std::map<int, std::vector<std::pair<double, int>>> splits;
  auto place = [&](const LocusPoint& p, const Point& pos, int vertex) {
    if (vertex >= 0) return vertex;
    const int vid = add_point(pos);
    splits[p.edge].push_back({p.t, vid});
    return vid;
  };

  aug.vertex_a = place(c.a, c.seg.a, locus_vertex(net, c.a));
  aug.vertex_b = place(c.b, c.seg.b, locus_vertex(net, c.b));

  std::vector<std::pair<double, int>> chain = {{0.0, aug.vertex_a}, {1.0, aug.vertex_b}};
  for (const auto& x : c.crossings)
    chain.push_back({x.t_seg, place(LocusPoint{x.edge, x.t_edge}, x.pos, x.vertex)});
  std::sort(chain.begin(), chain.end());

  std::vector<std::array<int, 2>> edge_list;
  aug.base_edge_pieces.resize(net.edge_count());
  for (int e = 0; e < net.edge_count(); ++e) {
    std::vector<std::pair<double, int>> cuts = {{0.0, net.edges[e][0]}, {1.0, net.edges[e][1]}};
    auto it = splits.find(e);
    if (it != splits.end()) cuts.insert(cuts.end(), it->second.begin(), it->second.end());
    std::sort(cuts.begin(), cuts.end());
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
      edge_list.push_back({cuts[k].second, cuts[k + 1].second});
      aug.base_edge_pieces[e].push_back(
          {cuts[k].first, cuts[k + 1].first, static_cast<int>(edge_list.size()) - 1});
    }
  }
  for (size_t k = 0; k + 1 < chain.size(); ++k) {
    edge_list.push_back({chain[k].second, chain[k + 1].second});
    aug.segment_pieces.push_back(
        {chain[k].first, chain[k + 1].first, static_cast<int>(edge_list.size()) - 1});
  }

  aug.net = build_network(pts, edge_list);
  assert(aug.net.vertex_count() == static_cast<int>(pts.size()));
  assert(aug.net.edge_count() == static_cast<int>(edge_list.size()));

  // endpoints are stored ascending; anchor each param range at the stored head
  auto orient = [&](AugmentedNetwork::Piece& pc) {
    if (edge_list[pc.edge][0] != aug.net.edges[pc.edge][0]) std::swap(pc.t0, pc.t1);
  };
  for (auto& pieces : aug.base_edge_pieces)
    for (auto& pc : pieces) orient(pc);
  for (auto& pc : aug.segment_pieces) orient(pc);
  return aug;
}

namespace {

LocusPoint map_through(const std::vector<AugmentedNetwork::Piece>& pieces, double t) {
  auto through = [&](const AugmentedNetwork::Piece& pc) {
    const double span = pc.t1 - pc.t0;  // negative when the stored edge is reversed
    const double u = span != 0.0 ? std::clamp((t - pc.t0) / span, 0.0, 1.0) : 0.0;
    return LocusPoint{pc.edge, u};
  };
  for (const auto& pc : pieces)
    if (t <= std::max(pc.t0, pc.t1) + 1e-12) return through(pc);
  return through(pieces.back());
}

}  // namespace

LocusPoint AugmentedNetwork::to_augmented(const LocusPoint& base_pt) const {
  return map_through(base_edge_pieces[base_pt.edge], base_pt.t);
}

LocusPoint AugmentedNetwork::segment_point(double t_seg) const {
  return map_through(segment_pieces, t_seg);
}

bool AugmentedNetwork::is_segment_edge(int edge) const {
  for (const auto& pc : segment_pieces)
    if (pc.edge == edge) return true;
  return false;
}

double diameter_with_segment(const Network& net, const Candidate& c) {
  return continuous_diameter(insert_segment(net, c).net).value;
}

bool is_shortcut(const Network& net, const Candidate& c) {
  return diameter_with_segment(net, c) < continuous_diameter(net).value - 1e-9;
}

bool is_shortcut(const Network& net, const LocusPoint& a, const LocusPoint& b) {
  try {
    return is_shortcut(net, make_candidate(net, a, b));
  } catch (const Error& err) {
    if (err.code() == ErrorCode::DegenerateSegment || err.code() == ErrorCode::CollinearOverlap)
      return false;
    throw;
  }
}

Candidate maximal_extension(const Network& net, const Candidate& c) {
  const double len = length(c.seg);
  const LineContacts lc = line_locus_contacts(net, c.seg.a, c.seg.b - c.seg.a);

  // Collinear runs block extension; stopping exactly at a run endpoint is fine.
  double lo_limit = -std::numeric_limits<double>::infinity();
  double hi_limit = std::numeric_limits<double>::infinity();
  for (const auto& ov : lc.overlaps) {
    if (ov.hi <= kGeomEps) lo_limit = std::max(lo_limit, ov.hi);
    if (ov.lo >= len - kGeomEps) hi_limit = std::min(hi_limit, ov.lo);
  }

  const LineContact* first = nullptr;
  const LineContact* last = nullptr;
  for (const LineContact& ct : lc.contacts) {
    if (ct.s < lo_limit - kGeomEps || ct.s > hi_limit + kGeomEps) continue;
    if (!first) first = &ct;
    last = &ct;
  }
  assert(first && last);
  return make_candidate(net, first->where, last->where);
}

double anchor_ecc(const Network& net, const DistanceMatrix& dm, int from, const EccAnchor& a) {
  if (a.kind == EccAnchor::Kind::Vertex) return dm(from, a.id);
  return vertex_edge_eccentricity(net, dm, from, a.id);
}

namespace {

Point line_edge_crossing(const Network& net, double slope, double intercept, int e) {
  const Point p0 = net.vertices[net.edges[e][0]];
  const Point p1 = net.vertices[net.edges[e][1]];
  const double g0 = p0.y - slope * p0.x - intercept;
  const double g1 = p1.y - slope * p1.x - intercept;
  const double denom = g0 - g1;
  if (std::abs(denom) <= 1e-15 * std::max({1.0, std::abs(g0), std::abs(g1)}))
    throw Error(ErrorCode::NoIntersection, "line is parallel to the edge");
  const double t = g0 / denom;
  if (t < -kGeomEps || t > 1.0 + kGeomEps)
    throw Error(ErrorCode::NoIntersection, "line misses the edge");
  return lerp(p0, p1, std::clamp(t, 0.0, 1.0));
}

}  // namespace

double f_eval(const Network& net, const DistanceMatrix& dm, const EccAnchor& alpha,
              const EccAnchor& beta, int w, int z, double slope, double intercept, int e,
              int ep) {
  if (net.edges[e][0] != w && net.edges[e][1] != w)
    throw Error(ErrorCode::BadParameter, "w must be an endpoint of e");
  if (net.edges[ep][0] != z && net.edges[ep][1] != z)
    throw Error(ErrorCode::BadParameter, "z must be an endpoint of e'");
  const Point p = line_edge_crossing(net, slope, intercept, e);
  const Point q = line_edge_crossing(net, slope, intercept, ep);
  return anchor_ecc(net, dm, w, alpha) + dist(net.vertices[w], p) + dist(p, q) +
         dist(q, net.vertices[z]) + anchor_ecc(net, dm, z, beta);
}

}  // namespace netshort
