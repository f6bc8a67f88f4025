#pragma once

#include <optional>
#include <vector>

#include "netshort/augment.hpp"
#include "netshort/distance.hpp"
#include "netshort/network.hpp"

namespace netshort {

struct AnchorPair {
  int u = 0;
  int v = 0;
};

// All unordered vertex pairs, keeping one representative per supporting line.
std::vector<AnchorPair> enumerate_anchor_pairs(const Network& net);

enum class Direction { Left, Right };

// E(i) for the one-direction extension family anchored at uv; entry 0 is uv
// itself. When the family is blocked (uv runs along edges), the values fall
// back to base-network point eccentricities of the contacts covered.
std::vector<double> extension_eccentricities(const Network& net, int u, int v, Direction dir);

// From-scratch E/N split of the augmented diameter: segment_side is the max
// eccentricity
// over the segment's points, network_side the max distance among base-locus
// point pairs, both in the augmented network.
struct ExtensionSplit {
  double segment_side = 0.0;
  double network_side = 0.0;
};
ExtensionSplit extension_split_diameter(const Network& net, const Candidate& c);

struct SearchStats {
  long long extensions = 0;      // E evaluations
  long long network_probes = 0;  // N evaluations (binary-searched)
};

struct BestExtension {
  bool found = false;  // family produced at least one insertable extension
  Candidate candidate;
  double diameter = 0.0;  // max(E, N) at the family minimizer, base when !found
  SearchStats stats;
};

// Minimum of max{E, N} over all extensions containing uv, probing N only on
// the suffix-minima staircase of E.
BestExtension best_extension(const Network& net, int u, int v);

struct ApproxOptions {
  std::optional<double> epsilon;  // subdivide first; additive bound becomes 4*epsilon
  long long budget = -1;          // max E evaluations; unset => refuse n > 30
  int threads = 1;
};

struct ApproxResult {
  bool found = false;  // a candidate strictly improves the diameter
  Candidate candidate;
  double diameter = 0.0;
  double base = 0.0;
  double guarantee = 0.0;  // additive optimality bound: 4*rho or 4*epsilon
  SearchStats stats;
};

ApproxResult approx_optimal_shortcut(const Network& net,
                                     const ApproxOptions& opts = {});  // BadEpsilon, BudgetExceeded

}  // namespace netshort
