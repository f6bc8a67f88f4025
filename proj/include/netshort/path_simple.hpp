#pragma once

#include <optional>
#include <vector>

#include "netshort/augment.hpp"
#include "netshort/network.hpp"

namespace netshort {

// Scalars of a simple shortcut pq on a path: x and y are the path distances
// from the path ends to the nearer shortcut endpoint, z is half the detour
// the shortcut saves. The diameter of path + pq is the largest of the three
// diametral-path candidates x+y+|pq|, x+z+|pq|, y+z+|pq|; which one wins is
// gated by the smallest of x, y, z.
struct SimpleShortcutDiagnostics {
  LocusPoint p, q;  // shortcut endpoints, p nearer the path start
  double x = 0.0, y = 0.0, z = 0.0;
  double chord = 0.0;      // |pq|
  double cycle_len = 0.0;  // d_P(p,q) + |pq|
  LocusPoint p_far, q_far; // points of the cycle farthest from p and q
  int gate = 0;            // index of the minimal scalar: 0 = x, 1 = y, 2 = z
  double diameter = 0.0;
};

SimpleShortcutDiagnostics simple_diagnostics(const Network& net,
                                             const Candidate& c);  // NotAPath, NotSimple

// Candidate generators for the optimal simple shortcut of a path. Together
// they cover every local optimum: both endpoints interior (x = y = z), one
// endpoint at a vertex (the two smallest scalars equal), and segments forced
// through an interior vertex.
std::vector<Candidate> solve_equal_offsets(const Network& net);    // NotAPath
std::vector<Candidate> solve_vertex_anchored(const Network& net);  // NotAPath
std::vector<Candidate> solve_pivot(const Network& net);            // NotAPath

enum class CandidateClass { S, L, X };  // simple / limit (3 contacts) / crossing

CandidateClass classify_candidate(const Network& net, const Candidate& c);

struct SimpleShortcutResult {
  bool exists = false;  // the optimum over simple segments is attained
  std::optional<Candidate> candidate;  // attaining simple candidate when exists
  double diameter = 0.0;  // attained optimum, else the infimum over limits
  double base = 0.0;
};

SimpleShortcutResult optimal_simple_shortcut(const Network& net);  // NotAPath

// Sufficient existence test: with the convex-hull edges inserted (split at
// crossings), all bounded faces convex guarantees an attained optimal simple
// shortcut. A NonConvexFace verdict is inconclusive.
struct ExistenceCheck {
  enum class Status { ConvexFaces, NonConvexFace, NoSimpleShortcut };
  Status status = Status::NoSimpleShortcut;
  bool verdict = false;
};

ExistenceCheck existence_sufficient(const Network& net);

}  // namespace netshort
