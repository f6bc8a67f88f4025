#include "netshort/distance.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include "netshort/error.hpp"

namespace netshort {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DistanceMatrix compute_distances(const Network& net) {
  const int n = net.vertex_count();
  DistanceMatrix dm;
  dm.n = n;
  dm.d.assign(static_cast<size_t>(n) * n, kInf);

  using Item = std::pair<double, int>;
  for (int src = 0; src < n; ++src) {
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dm.at(src, src) = 0.0;
    pq.push({0.0, src});
    while (!pq.empty()) {
      auto [dist, v] = pq.top();
      pq.pop();
      if (dist > dm(src, v)) continue;
      for (int e : net.incident[v]) {
        const int w = net.edges[e][0] == v ? net.edges[e][1] : net.edges[e][0];
        const double nd = dist + net.edge_length[e];
        if (nd < dm(src, w)) {
          dm.at(src, w) = nd;
          pq.push({nd, w});
        }
      }
    }
  }
  return dm;
}

double vertex_point_distance(const Network& net, const DistanceMatrix& dm, int v,
                             const LocusPoint& p) {
  const double len = net.edge_length[p.edge];
  const int a = net.edges[p.edge][0];
  const int b = net.edges[p.edge][1];
  return std::min(dm(v, a) + p.t * len, dm(v, b) + (1.0 - p.t) * len);
}

double point_distance(const Network& net, const DistanceMatrix& dm, const LocusPoint& a,
                      const LocusPoint& b) {
  const double la = net.edge_length[a.edge];
  const double lb = net.edge_length[b.edge];
  const int a0 = net.edges[a.edge][0], a1 = net.edges[a.edge][1];
  const int b0 = net.edges[b.edge][0], b1 = net.edges[b.edge][1];
  double best = kInf;
  if (a.edge == b.edge) best = std::abs(a.t - b.t) * la;
  best = std::min(best, a.t * la + dm(a0, b0) + b.t * lb);
  best = std::min(best, a.t * la + dm(a0, b1) + (1.0 - b.t) * lb);
  best = std::min(best, (1.0 - a.t) * la + dm(a1, b0) + b.t * lb);
  best = std::min(best, (1.0 - a.t) * la + dm(a1, b1) + (1.0 - b.t) * lb);
  return best;
}

double vertex_edge_eccentricity(const Network& net, const DistanceMatrix& dm, int v, int e) {
  const int s = net.edges[e][0];
  const int t = net.edges[e][1];
  return 0.5 * (dm(v, s) + dm(v, t) + net.edge_length[e]);
}

namespace {

// Farthest point of edge e from a source whose distances to the endpoints of
// e are ds, dt: the two routes meet there and both realize the eccentricity.
double farthest_param(double ds, double dt, double len) {
  return std::clamp((dt - ds + len) / (2.0 * len), 0.0, 1.0);
}

}  // namespace

EdgePairMax edge_pair_max(const Network& net, const DistanceMatrix& dm, int uv, int st) {
  if (uv == st) throw Error(ErrorCode::SameEdge, "edge_pair_max: edges must differ");
  const int u = net.edges[uv][0], v = net.edges[uv][1];
  const int s = net.edges[st][0], t = net.edges[st][1];
  const double l = net.edge_length[uv];
  const double m = net.edge_length[st];

  const double ecc_u = 0.5 * (dm(u, s) + dm(u, t) + m);
  const double ecc_v = 0.5 * (dm(v, s) + dm(v, t) + m);
  const double h = 0.5 * (ecc_u + ecc_v + l);
  const double p1 = 0.5 * (l + m + dm(u, s) + dm(v, t));
  const double p2 = 0.5 * (l + m + dm(u, t) + dm(v, s));
  const double peak = std::min({h, p1, p2});

  EdgePairMax out;
  out.value = peak;
  out.ta = std::clamp((peak - ecc_u) / l, 0.0, 1.0);
  const double das = std::min(out.ta * l + dm(u, s), (1.0 - out.ta) * l + dm(v, s));
  const double dat = std::min(out.ta * l + dm(u, t), (1.0 - out.ta) * l + dm(v, t));
  out.tb = farthest_param(das, dat, m);
  return out;
}

double EccProfile::value_at(double t) const {
  return std::min({ecc_u + t * len_uv, ecc_v + (1.0 - t) * len_uv, plateau});
}

EccProfile ecc_profile(const Network& net, const DistanceMatrix& dm, int uv, int st) {
  if (uv == st) throw Error(ErrorCode::SameEdge, "ecc_profile: edges must differ");
  const int u = net.edges[uv][0], v = net.edges[uv][1];
  const int s = net.edges[st][0], t = net.edges[st][1];
  const double l = net.edge_length[uv];
  const double m = net.edge_length[st];

  EccProfile p;
  p.edge_uv = uv;
  p.edge_st = st;
  p.len_uv = l;
  p.ecc_u = 0.5 * (dm(u, s) + dm(u, t) + m);
  p.ecc_v = 0.5 * (dm(v, s) + dm(v, t) + m);
  const double p1 = 0.5 * (l + m + dm(u, s) + dm(v, t));
  const double p2 = 0.5 * (l + m + dm(u, t) + dm(v, s));
  p.plateau = std::min(p1, p2);
  const double h = 0.5 * (p.ecc_u + p.ecc_v + l);
  p.peak = std::min(h, p.plateau);
  p.witness_u = LocusPoint{st, farthest_param(dm(u, s), dm(u, t), m)};
  p.witness_v = LocusPoint{st, farthest_param(dm(v, s), dm(v, t), m)};

  const double x_lo = std::clamp((p.peak - p.ecc_u) / l, 0.0, 1.0);
  const double x_hi = std::clamp(1.0 - (p.peak - p.ecc_v) / l, 0.0, 1.0);
  std::vector<double> ts = {0.0, x_lo, x_hi, 1.0};
  for (double tt : ts) {
    if (p.breakpoints.empty() || tt > p.breakpoints.back().first + 1e-12)
      p.breakpoints.push_back({tt, p.value_at(tt)});
  }
  return p;
}

namespace {

std::tuple<int, double, int, double> lex_key(const LocusPoint& a, const LocusPoint& b) {
  return {a.edge, a.t, b.edge, b.t};
}

}  // namespace

DiametralPair continuous_diameter(const Network& net) {
  return continuous_diameter(net, compute_distances(net));
}

DiametralPair continuous_diameter(const Network& net, const DistanceMatrix& dm) {
  DiametralPair best;
  if (net.edge_count() == 0) {
    best.a = best.b = LocusPoint{-1, 0.0};
    return best;
  }

  const double tol = 1e-12 * std::max(1.0, net.rho);
  bool have = false;
  auto consider = [&](double value, const LocusPoint& ra, const LocusPoint& rb) {
    const LocusPoint a = normalize(net, ra);
    const LocusPoint b = normalize(net, rb);
    if (!have || value > best.value + tol ||
        (value >= best.value - tol && lex_key(a, b) < lex_key(best.a, best.b))) {
      best.value = std::max(value, have ? best.value : value);
      best.a = a;
      best.b = b;
      have = true;
    }
  };

  const int n = net.vertex_count();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) consider(dm(i, j), vertex_locus_point(net, i), vertex_locus_point(net, j));

  const int ec = net.edge_count();
  for (int e = 0; e < ec; ++e)
    for (int f = 0; f < ec; ++f) {
      if (e == f) continue;  // same-edge maxima are realized by the endpoint pair
      const EdgePairMax w = edge_pair_max(net, dm, e, f);
      consider(w.value, LocusPoint{e, w.ta}, LocusPoint{f, w.tb});
    }

  const bool av = locus_vertex(net, best.a) >= 0;
  const bool bv = locus_vertex(net, best.b) >= 0;
  best.kind = av && bv   ? DiametralPair::Kind::VertexVertex
              : av || bv ? DiametralPair::Kind::VertexEdge
                         : DiametralPair::Kind::EdgeEdge;
  return best;
}

const char* kind_name(DiametralPair::Kind k) {
  switch (k) {
    case DiametralPair::Kind::VertexVertex: return "vertex-vertex";
    case DiametralPair::Kind::VertexEdge: return "vertex-edge";
    case DiametralPair::Kind::EdgeEdge: return "edge-edge";
  }
  return "unknown";
}

}  // namespace netshort
