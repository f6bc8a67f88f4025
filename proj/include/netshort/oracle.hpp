#pragma once

#include <vector>

#include "netshort/augment.hpp"
#include "netshort/network.hpp"

namespace netshort {

struct OracleConfig {
  int diameter_samples_per_edge = 200;  // >= 2
  int endpoint_samples_per_edge = 50;   // >= 2
  unsigned seed = 0;
};

// Max pairwise distance over a regular sample grid. The result lies in
// [diam - 2*rho/samples, diam]: each true maximizer is within half a grid
// step of a sample.
double sampled_diameter(const Network& net, const OracleConfig& cfg);

struct GridSearchResult {
  bool found = false;   // at least one valid candidate was evaluated
  Candidate best;       // smallest augmented diameter, ties broken lexicographically
  double diameter = 0.0;
  double base = 0.0;    // continuous diameter without any candidate
  double spacing = 0.0; // largest endpoint grid step, for error bounds
};

// Exhaustive search over all grid endpoint pairs; the reference optimum is
// within 2*spacing of the returned diameter.
GridSearchResult grid_shortcut_search(const Network& net, const OracleConfig& cfg,
                                      bool simple_only);

// Zigzag path with k spikes at unit spacing, symmetric about the midpoint o
// of the chord pq. Each spike straddles the chord line so inserting pq cuts
// both of its sides; per side the shape is solved so the arc from the top
// down to the cut equals the cut's chord position. Every left-top/right-top
// distance then telescopes to exactly |pq|, each top lies at |pq|/2 from o,
// and |pq| is also the augmented diameter (up to the tiny kinks where the
// path dips under the chord). The generator re-derives all of this before
// returning.
struct SpikeFixture {
  Network net;          // the zigzag path
  Candidate shortcut;   // the chord pq
  double span = 0.0;    // |pq|
  std::vector<int> left_tops;
  std::vector<int> right_tops;
};

SpikeFixture gen_spike_fixture(int k, double pq_len);  // InfeasibleGeometry

}  // namespace netshort
