#pragma once

#include <vector>

#include "netshort/distance.hpp"
#include "netshort/network.hpp"

namespace netshort {

// Contacts of an infinite line with the locus: isolated points plus collinear
// runs along edges. Positions are signed arclengths s with pos = origin + s*dir
// (dir is normalized internally).
struct LineContact {
  double s = 0.0;
  Point pos;
  LocusPoint where;  // one edge carrying the contact (lowest id at a vertex)
  int vertex = -1;   // network vertex id when the contact is a vertex
};

struct LineContacts {
  Point origin;
  Point dir;  // unit
  struct Interval {
    double lo = 0.0, hi = 0.0;
    int edge = -1;
  };
  std::vector<LineContact> contacts;   // sorted by s, deduplicated
  std::vector<Interval> overlaps;      // collinear runs, sorted by lo
};

LineContacts line_locus_contacts(const Network& net, const Point& origin, const Point& dir);

// Nearest locus point within eps of a raw position.
LocusPoint snap_to_locus(const Network& net, const Point& p, double eps);  // EndpointOffLocus

struct Candidate {
  LocusPoint a;
  LocusPoint b;
  Segment seg;  // locate(a) -> locate(b)
  struct Crossing {
    int edge = -1;  // lowest incident edge id when at a vertex
    Point pos;
    double t_seg = 0.0;   // param along seg
    double t_edge = 0.0;  // param on `edge`
    int vertex = -1;
  };
  std::vector<Crossing> crossings;  // interior contacts only, sorted along seg
};

Candidate make_candidate(const Network& net, const LocusPoint& a,
                         const LocusPoint& b);  // DegenerateSegment, CollinearOverlap

struct AugmentedNetwork {
  Network net;
  Candidate candidate;
  std::vector<int> base_vertex;  // new vertex id -> base vertex id, -1 if created
  struct Piece {
    double t0 = 0.0, t1 = 0.0;  // source params at the stored edge's head and
    int edge = -1;              // tail (t0 > t1 when stored reversed); edge id in `net`
  };
  std::vector<std::vector<Piece>> base_edge_pieces;  // per base edge, in t order
  std::vector<Piece> segment_pieces;                 // along the candidate segment
  int vertex_a = -1;  // new vertex ids of the segment endpoints
  int vertex_b = -1;

  LocusPoint to_augmented(const LocusPoint& base_pt) const;
  LocusPoint segment_point(double t_seg) const;
  bool is_segment_edge(int edge) const;
};

AugmentedNetwork insert_segment(const Network& net, const Candidate& c);

double diameter_with_segment(const Network& net, const Candidate& c);

bool is_shortcut(const Network& net, const Candidate& c);
// Convenience form: degenerate or collinear-overlap chords are never shortcuts.
bool is_shortcut(const Network& net, const LocusPoint& a, const LocusPoint& b);

Candidate maximal_extension(const Network& net, const Candidate& c);

// Eccentricity anchor: a vertex or a whole edge.
struct EccAnchor {
  enum class Kind { Vertex, Edge };
  Kind kind = Kind::Vertex;
  int id = 0;
};

double anchor_ecc(const Network& net, const DistanceMatrix& dm, int from, const EccAnchor& a);

// Chord potential for a line y = slope*x + intercept crossing edge e at p and
// edge ep at q:  ecc(w,alpha) + |wp| + |pq| + |qz| + ecc(z,beta).
// w must be an endpoint of e and z an endpoint of ep. Linear in the intercept
// while both crossings persist.
double f_eval(const Network& net, const DistanceMatrix& dm, const EccAnchor& alpha,
              const EccAnchor& beta, int w, int z, double slope, double intercept, int e,
              int ep);  // NoIntersection

}  // namespace netshort
