#pragma once

#include <vector>

#include "netshort/augment.hpp"
#include "netshort/network.hpp"

namespace netshort {

// One piece of the path between consecutive contacts with the shortcut,
// described by its endpoint offsets along the shortcut. A dangling end of the
// path (its tip off the shortcut) becomes a loop chain: both offsets coincide
// and len counts the piece twice (out and back), so D stays the true reach.
struct Chain {
  int index = 0;      // rank in left-to-right order of left endpoints
  double xl = 0.0;    // left endpoint offset along the shortcut
  double xr = 0.0;    // right endpoint offset
  double len = 0.0;   // |C_i|
  double left = 0.0;  // L_i: offset of the left endpoint from the shortcut start
  double right = 0.0; // R_i: remaining offset to the shortcut end
  double chord = 0.0; // s_i = xr - xl
  double semi = 0.0;  // D_i = (|C_i| + s_i) / 2
  bool loop = false;
  double path_lo = 0.0, path_hi = 0.0;  // arclength range of the piece
};

struct ChainDecomposition {
  Candidate candidate;
  double shortcut_len = 0.0;
  std::vector<Chain> chains;  // sorted by (xl, xr, path order)
};

// Splits the path at every contact with the (maximal) candidate.
ChainDecomposition decompose(const Network& net, const Candidate& c);  // NotAPath, NonMaximalCandidate

enum class ChainPairKind { Disjoint, Nested, Overlapping };

// Max distance between points of the two chain cycles. Disjoint: i left of j.
// Nested: j inside i. Overlapping: i's chord starts left of j's.
double two_chain_diameter(ChainPairKind kind, const Chain& ci, const Chain& cj);  // KindMismatch

// Instrumentation for the range-max sweep: one record per combined query.
struct SweepQueryRecord {
  int chain = -1;        // querying chain (outer / left role)
  int beta_chain = -1;   // winner of the nested-form array query, -1 if empty
  int gamma_chain = -1;  // winner of the overlapping-form array query
  double beta_value = 0.0;
  double gamma_value = 0.0;
};
struct SweepTrace {
  std::vector<SweepQueryRecord> queries;
};

// Diameter of path + shortcut via the chain sweep: disjoint pairs from a
// running max of D_i + R_i, nested/overlapping pairs from range-max arrays
// over chain endpoints. Agrees with the quadratic engine.
double path_diameter_with_shortcut(const Network& net, const Candidate& c,
                                   SweepTrace* trace = nullptr);  // NotAPath, NonMaximalCandidate

struct EnvelopeLine {
  double a = 0.0;  // value(y) = a * y + b
  double b = 0.0;
  int tag = -1;
};

struct Envelope {
  struct Piece {
    double y0 = 0.0, y1 = 0.0;
    int line = -1;  // index into the input list
  };
  std::vector<Piece> pieces;  // covers [ya, yb] left to right
  double min_value = 0.0;     // minimum of the upper envelope on [ya, yb]
  double min_y = 0.0;         // smallest y attaining it
};

Envelope upper_envelope(const std::vector<EnvelopeLine>& lines, double ya,
                        double yb);  // EmptyInput

struct FixedOrientationResult {
  bool found = false;
  Candidate candidate;
  double diameter = 0.0;  // best achieved, base when !found
  double base = 0.0;
};

// Best shortcut among all segments of one direction (angle in degrees,
// 0 = horizontal): per strip between consecutive vertex levels the chain
// structure is fixed and every pair value is linear in the height, so the
// strip optimum is the minimum of an upper envelope of lines.
FixedOrientationResult optimal_fixed_orientation_shortcut(const Network& net,
                                                          double angle_deg);  // NotAPath

}  // namespace netshort
