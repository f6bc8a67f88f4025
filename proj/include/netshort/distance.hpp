#pragma once

#include <vector>

#include "netshort/network.hpp"

namespace netshort {

struct DistanceMatrix {
  int n = 0;
  std::vector<double> d;

  double operator()(int i, int j) const { return d[static_cast<size_t>(i) * n + j]; }
  double& at(int i, int j) { return d[static_cast<size_t>(i) * n + j]; }
};

// All-pairs shortest vertex distances (Dijkstra from every source).
DistanceMatrix compute_distances(const Network& net);

// Shortest distance from vertex v to locus point p (through p's edge endpoints).
double vertex_point_distance(const Network& net, const DistanceMatrix& dm, int v,
                             const LocusPoint& p);

// Shortest distance between two locus points: the four endpoint-routed paths,
// plus the direct run when both lie on the same edge.
double point_distance(const Network& net, const DistanceMatrix& dm, const LocusPoint& a,
                      const LocusPoint& b);

// Largest distance from vertex v to any point of edge e (attained where the
// two endpoint routes meet).
double vertex_edge_eccentricity(const Network& net, const DistanceMatrix& dm, int v, int e);

// max_{a in uv} max_{b in st} d(a, b) together with a first witness pair.
struct EdgePairMax {
  double value = 0.0;
  double ta = 0.0;  // on uv, smallest maximizer
  double tb = 0.0;  // on st, the point farthest from ta
};
EdgePairMax edge_pair_max(const Network& net, const DistanceMatrix& dm, int uv, int st);

// Eccentricity profile t -> max_{b in st} d(uv(t), b): concave piecewise
// linear with slopes +len(uv), 0, -len(uv) (at most three pieces). The
// plateau, when present, satisfies
//   len(uv) + value(0) + value(1) - 2 * plateau == d(u', v')
// where u', v' are the points of st farthest from u and from v.
struct EccProfile {
  int edge_uv = 0;
  int edge_st = 0;
  double len_uv = 0.0;
  double ecc_u = 0.0;    // value at t = 0
  double ecc_v = 0.0;    // value at t = 1
  double plateau = 0.0;  // height of the slope-0 line (may sit above the max)
  double peak = 0.0;     // maximum over [0,1]
  LocusPoint witness_u;  // farthest point of st from u
  LocusPoint witness_v;  // farthest point of st from v
  std::vector<std::pair<double, double>> breakpoints;  // (t, value), 2..4 entries

  double value_at(double t) const;
};

EccProfile ecc_profile(const Network& net, const DistanceMatrix& dm, int uv, int st);

struct DiametralPair {
  enum class Kind { VertexVertex, VertexEdge, EdgeEdge };
  Kind kind = Kind::VertexVertex;
  LocusPoint a;
  LocusPoint b;
  double value = 0.0;
};

// Maximum distance between any two locus points. Ties among maximizing pairs
// are broken lexicographically by (edge id, t) of the first point, then the
// second.
DiametralPair continuous_diameter(const Network& net);
DiametralPair continuous_diameter(const Network& net, const DistanceMatrix& dm);

const char* kind_name(DiametralPair::Kind k);

}  // namespace netshort
