#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netshort/error.hpp"
#include "netshort/geometry.hpp"

namespace netshort {

// A plane Euclidean network: straight-line edges weighted by Euclidean length,
// pairwise disjoint except at shared endpoint vertices, and connected.
struct Network {
  std::vector<Point> vertices;
  std::vector<std::array<int, 2>> edges;
  std::vector<double> edge_length;
  std::vector<std::vector<int>> incident;  // edge ids per vertex
  double rho = 0.0;                        // largest edge length

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  Segment edge_segment(int e) const {
    return {vertices[edges[e][0]], vertices[edges[e][1]]};
  }
  int degree(int v) const { return static_cast<int>(incident[v].size()); }
};

// A point of the locus: parameter t in [0,1] along edge `edge` from its first
// endpoint. Vertex positions are canonicalized by normalize().
struct LocusPoint {
  int edge = 0;
  double t = 0.0;
};

// Validates and indexes the raw lists. Duplicate vertices (within kGeomEps) are
// merged and duplicate edges dropped; degenerate edges, edge crossings, edges
// through foreign vertices, and disconnected inputs are rejected.
Network build_network(const std::vector<Point>& vertices,
                      const std::vector<std::array<int, 2>>& edges);

// Indexes the lists as given: no merging, no validation. For arrangements
// derived from an already validated network (edges split at points on them),
// where re-running the tolerance predicates can reject a sub-division whose
// pieces merely pass within kGeomEps of each other near a cut.
Network assemble_network(std::vector<Point> vertices,
                         std::vector<std::array<int, 2>> edges);

Point locate(const Network& net, const LocusPoint& p);

// Canonical form: t snapped to {0,1} when within kGeomEps of a vertex (measured
// along the edge); vertex positions re-anchored on the lowest incident edge id.
LocusPoint normalize(const Network& net, LocusPoint p);
bool same_locus_point(const Network& net, LocusPoint a, LocusPoint b);

// Vertex id if p sits at a vertex, else -1.
int locus_vertex(const Network& net, const LocusPoint& p);

// Canonical locus point of a vertex: t 0 or 1 on its lowest-id incident edge.
LocusPoint vertex_locus_point(const Network& net, int v);

// View of a network that is a simple path (two degree-1 endpoints, the rest
// degree 2). `order` walks from endpoint u (the smaller vertex id of the two
// degree-1 vertices); prefix[i] is the arclength of order[i] from u.
struct PathNetwork {
  std::vector<int> order;
  std::vector<int> edge_of_step;  // edge id between order[i] and order[i+1]
  std::vector<double> prefix;
  double total_length = 0.0;
};

bool is_path(const Network& net);
PathNetwork as_path(const Network& net);  // throws NotAPath

// Arclength of locus point p from the path start u.
double path_position(const Network& net, const PathNetwork& path, const LocusPoint& p);

// Maps a sub-edge of a subdivided network back to its source edge.
struct SubdivisionMap {
  struct SubEdge {
    int base_edge = 0;
    double t0 = 0.0;  // parameter range covered on the base edge
    double t1 = 1.0;
  };
  std::vector<SubEdge> sub_edges;  // indexed by subdivided edge id

  LocusPoint to_base(const LocusPoint& p) const {
    const SubEdge& s = sub_edges[p.edge];
    return {s.base_edge, s.t0 + p.t * (s.t1 - s.t0)};
  }
};

// Splits every edge into equal parts no longer than max_len. The metric and
// the locus are unchanged; only degree-2 dummy vertices are added.
Network subdivide(const Network& net, double max_len);
Network subdivide(const Network& net, double max_len, SubdivisionMap& map_out);

// JSON format: {"vertices": [[x,y],...], "edges": [[i,j],...]}; non-finite
// coordinates are rejected. The writer may attach a "meta" object, which the
// reader ignores.
Network read_network_json(const std::string& text);
std::string write_network_json(const Network& net,
                               const std::map<std::string, std::string>& meta = {});

Network read_network_file(const std::string& path);
void write_network_file(const std::string& path, const Network& net,
                        const std::map<std::string, std::string>& meta = {});

}  // namespace netshort
