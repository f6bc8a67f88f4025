#include "netshort/approx.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <limits>
#include <map>
#include <thread>
#include <tuple>

#include "netshort/error.hpp"

namespace netshort {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool same_supporting_line(const Point& a0, const Point& a1, const Point& b0, const Point& b1) {
  const double la = dist(a0, a1);
  const Point da{(a1.x - a0.x) / la, (a1.y - a0.y) / la};
  const double lb = dist(b0, b1);
  const Point db{(b1.x - b0.x) / lb, (b1.y - b0.y) / lb};
  return std::abs(cross(da, db)) <= kGeomEps && std::abs(cross(da, b0 - a0)) <= kGeomEps;
}

}  // namespace

std::vector<AnchorPair> enumerate_anchor_pairs(const Network& net) {
  std::vector<AnchorPair> out;
  const int n = net.vertex_count();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      bool dup = false;
      for (const AnchorPair& r : out)
        if (same_supporting_line(net.vertices[r.u], net.vertices[r.v], net.vertices[u],
                                 net.vertices[v])) {
          dup = true;
          break;
        }
      if (!dup) out.push_back({u, v});
    }
  return out;
}

namespace {

struct MetricEdge {
  int x = 0, y = 0;
  double w = 0.0;
};

// max_{a in A} max_{b in B} d(a,b) from endpoint distances (concave profile peak).
double pair_peak(const std::vector<double>& d, int n, const MetricEdge& a, const MetricEdge& b) {
  const double dxs = d[static_cast<size_t>(a.x) * n + b.x];
  const double dxt = d[static_cast<size_t>(a.x) * n + b.y];
  const double dys = d[static_cast<size_t>(a.y) * n + b.x];
  const double dyt = d[static_cast<size_t>(a.y) * n + b.y];
  const double ex = 0.5 * (dxs + dxt + b.w);
  const double ey = 0.5 * (dys + dyt + b.w);
  return std::min(
      {0.5 * (ex + ey + a.w), 0.5 * (a.w + b.w + dxs + dyt), 0.5 * (a.w + b.w + dxt + dys)});
}

// Exact metric update for one added edge (x, y, w).
void relax_insert(std::vector<double>& d, int n, int x, int y, double w) {
  for (int i = 0; i < n; ++i) {
    const double via_x = d[static_cast<size_t>(i) * n + x] + w;
    const double via_y = d[static_cast<size_t>(i) * n + y] + w;
    double* row = &d[static_cast<size_t>(i) * n];
    const double* row_y = &d[static_cast<size_t>(y) * n];
    const double* row_x = &d[static_cast<size_t>(x) * n];
    for (int j = 0; j < n; ++j) {
      const double cand = std::min(via_x + row_y[j], via_y + row_x[j]);
      if (cand < row[j]) row[j] = cand;
    }
  }
}

// One supporting line of the network: contacts, overlap-free zones, and a
// contact-subdivided copy of the network whose vertices carry the metric.
class FamilySearch {
 public:
  struct Zone {
    int first = 0, last = -1;  // inclusive contact index range
  };
  struct RowBest {
    bool found = false;
    double diam = kInf;
    int l = -1, r = -1;
  };
  struct Budget {
    std::atomic<long long>* used = nullptr;
    long long limit = -1;  // < 0: unlimited
    bool exceeded = false;
    bool tick() {
      if (!used) return true;
      const long long now = used->fetch_add(1) + 1;
      if (limit >= 0 && now > limit) {
        exceeded = true;
        return false;
      }
      return true;
    }
  };

  FamilySearch(const Network& base, const Point& origin, const Point& dir)
      : base_(base), lc_(line_locus_contacts(base, origin, dir)) {
    build_zones();
    build_subdivision();
  }

  const LineContacts& contacts() const { return lc_; }

  int contact_of_vertex(int v) const {
    for (size_t i = 0; i < lc_.contacts.size(); ++i)
      if (lc_.contacts[i].vertex == v) return static_cast<int>(i);
    return -1;
  }

  int zone_containing(int i_lo, int i_hi) const {
    for (size_t z = 0; z < zones_.size(); ++z)
      if (zones_[z].first <= i_lo && i_hi <= zones_[z].last) return static_cast<int>(z);
    return -1;
  }

  const std::vector<Zone>& zones() const { return zones_; }

  // All extensions for one left endpoint: E per right endpoint, N probed on
  // the suffix-minima staircase of E only.
  RowBest search_row(int l, int r_min, int r_max, SearchStats& stats, Budget& budget) const {
    RowBest best;
    const int n = sub_.vertex_count();
    std::vector<double> d = d0_.d;
    std::vector<MetricEdge> segs;
    auto add_gap = [&](int k) {
      const MetricEdge me{sub_vid_[k], sub_vid_[k + 1],
                          lc_.contacts[k + 1].s - lc_.contacts[k].s};
      relax_insert(d, n, me.x, me.y, me.w);
      segs.push_back(me);
    };
    for (int k = l; k < r_min; ++k) add_gap(k);

    const int count = r_max - r_min + 1;
    std::vector<double> e_val(count);
    std::vector<std::vector<double>> snap(count);
    for (int idx = 0; idx < count; ++idx) {
      if (idx > 0) add_gap(r_min + idx - 1);
      if (!budget.tick()) return best;
      ++stats.extensions;
      e_val[idx] = eval_segment_side(d, segs);
      snap[idx] = d;
    }

    // suffix minima: no later extension has a strictly smaller E
    std::vector<int> stair;
    double run_min = kInf;
    for (int idx = count - 1; idx >= 0; --idx)
      if (e_val[idx] <= run_min + 1e-12) {
        stair.push_back(idx);
        run_min = std::min(run_min, e_val[idx]);
      }
    std::reverse(stair.begin(), stair.end());

    std::vector<double> n_cache(count, -1.0);
    auto n_at = [&](int idx) {
      if (n_cache[idx] < 0.0) {
        ++stats.network_probes;
        n_cache[idx] = eval_network_side(snap[idx]);
      }
      return n_cache[idx];
    };

    // E is non-decreasing and N non-increasing along the staircase; the best
    // extension sits at the crossing.
    int lo = 0, hi = static_cast<int>(stair.size());
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (e_val[stair[mid]] >= n_at(stair[mid]))
        hi = mid;
      else
        lo = mid + 1;
    }
    for (const int pos : {lo - 1, lo}) {
      if (pos < 0 || pos >= static_cast<int>(stair.size())) continue;
      const int idx = stair[pos];
      const double val = std::max(e_val[idx], n_at(idx));
      if (!best.found || val < best.diam - 1e-12) {
        best.found = true;
        best.diam = val;
        best.l = l;
        best.r = r_min + idx;
      }
    }
    return best;
  }

  // E list for one anchored direction, growing one contact per step.
  std::vector<double> direction_ecc(int iu, int iv, Direction dir, int bound) const {
    const int n = sub_.vertex_count();
    std::vector<double> d = d0_.d;
    std::vector<MetricEdge> segs;
    auto add_gap = [&](int k) {
      const MetricEdge me{sub_vid_[k], sub_vid_[k + 1],
                          lc_.contacts[k + 1].s - lc_.contacts[k].s};
      relax_insert(d, n, me.x, me.y, me.w);
      segs.push_back(me);
    };
    for (int k = iu; k < iv; ++k) add_gap(k);
    std::vector<double> out = {eval_segment_side(d, segs)};
    if (dir == Direction::Right) {
      for (int r = iv; r < bound; ++r) {
        add_gap(r);
        out.push_back(eval_segment_side(d, segs));
      }
    } else {
      for (int l = iu; l > bound; --l) {
        add_gap(l - 1);
        out.push_back(eval_segment_side(d, segs));
      }
    }
    return out;
  }

  std::vector<int> zone_vertices(const Zone& z) const {
    std::vector<int> out;
    for (int i = z.first; i <= z.last; ++i)
      if (lc_.contacts[i].vertex >= 0) out.push_back(i);
    return out;
  }

 private:
  void build_zones() {
    // merge collinear runs into maximal blocked intervals
    std::vector<std::pair<double, double>> runs;
    for (const auto& ov : lc_.overlaps) {
      if (!runs.empty() && ov.lo <= runs.back().second + kGeomEps)
        runs.back().second = std::max(runs.back().second, ov.hi);
      else
        runs.push_back({ov.lo, ov.hi});
    }
    auto contact_at = [&](double s) {
      for (size_t i = 0; i < lc_.contacts.size(); ++i)
        if (std::abs(lc_.contacts[i].s - s) <= 1e-7) return static_cast<int>(i);
      throw Error(ErrorCode::InfeasibleGeometry, "collinear run endpoint is not a contact");
    };
    int start = 0;
    for (const auto& run : runs) {
      const int i_lo = contact_at(run.first);
      const int i_hi = contact_at(run.second);
      zones_.push_back({start, i_lo});
      start = i_hi;
    }
    zones_.push_back({start, static_cast<int>(lc_.contacts.size()) - 1});
  }

  void build_subdivision() {
    std::vector<Point> pts = base_.vertices;
    std::map<int, std::vector<std::pair<double, int>>> cuts;
    sub_vid_.assign(lc_.contacts.size(), -1);
    for (size_t i = 0; i < lc_.contacts.size(); ++i) {
      const LineContact& ct = lc_.contacts[i];
      if (ct.vertex >= 0) {
        sub_vid_[i] = ct.vertex;
        continue;
      }
      pts.push_back(ct.pos);
      sub_vid_[i] = static_cast<int>(pts.size()) - 1;
      cuts[ct.where.edge].push_back({ct.where.t, sub_vid_[i]});
    }
    std::vector<std::array<int, 2>> edges;
    for (int e = 0; e < base_.edge_count(); ++e) {
      std::vector<std::pair<double, int>> seq = {{0.0, base_.edges[e][0]},
                                                 {1.0, base_.edges[e][1]}};
      auto it = cuts.find(e);
      if (it != cuts.end()) seq.insert(seq.end(), it->second.begin(), it->second.end());
      std::sort(seq.begin(), seq.end());
      for (size_t k = 0; k + 1 < seq.size(); ++k) edges.push_back({seq[k].second, seq[k + 1].second});
    }
    // The cuts all lie on validated edges, so the result is planar by
    // construction; build_network's tolerance predicates can falsely reject
    // pieces that pass within kGeomEps of each other when the line crosses at
    // a near-vertex or near-parallel position. The search reads sub_ purely
    // metrically, so assemble without re-validating.
    sub_ = assemble_network(std::move(pts), std::move(edges));
    d0_ = compute_distances(sub_);
    for (int e = 0; e < sub_.edge_count(); ++e)
      sub_edges_.push_back({sub_.edges[e][0], sub_.edges[e][1], sub_.edge_length[e]});
  }

  double eval_segment_side(const std::vector<double>& d, const std::vector<MetricEdge>& segs) const {
    const int n = sub_.vertex_count();
    double best = 0.0;
    for (size_t k = 0; k < segs.size(); ++k) {
      best = std::max(best, d[static_cast<size_t>(segs[k].x) * n + segs[k].y]);
      for (const MetricEdge& me : sub_edges_) best = std::max(best, pair_peak(d, n, segs[k], me));
      for (size_t k2 = k + 1; k2 < segs.size(); ++k2)
        best = std::max(best, pair_peak(d, n, segs[k], segs[k2]));
    }
    return best;
  }

  double eval_network_side(const std::vector<double>& d) const {
    const int n = sub_.vertex_count();
    double best = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) best = std::max(best, d[static_cast<size_t>(i) * n + j]);
    for (size_t a = 0; a < sub_edges_.size(); ++a)
      for (size_t b = a + 1; b < sub_edges_.size(); ++b)
        best = std::max(best, pair_peak(d, n, sub_edges_[a], sub_edges_[b]));
    return best;
  }

  const Network& base_;
  LineContacts lc_;
  std::vector<Zone> zones_;
  Network sub_;
  DistanceMatrix d0_;
  std::vector<int> sub_vid_;
  std::vector<MetricEdge> sub_edges_;
};

struct LineBest {
  bool found = false;
  double diam = kInf;
  LocusPoint a, b;
  SearchStats stats;
};

// Best over all insertable extensions on the line that contain at least two
// network vertices; `anchor` restricts to extensions containing that pair.
LineBest search_line(const Network& net, const FamilySearch& fs,
                     std::optional<std::pair<int, int>> anchor, FamilySearch::Budget& budget) {
  LineBest best;
  auto consider = [&](const FamilySearch::RowBest& rb) {
    if (!rb.found) return;
    const LocusPoint a = fs.contacts().contacts[rb.l].where;
    const LocusPoint b = fs.contacts().contacts[rb.r].where;
    const auto key = std::make_tuple(a.edge, a.t, b.edge, b.t);
    const auto cur = std::make_tuple(best.a.edge, best.a.t, best.b.edge, best.b.t);
    if (!best.found || rb.diam < best.diam - 1e-12 ||
        (rb.diam <= best.diam + 1e-12 && key < cur)) {
      best.found = true;
      best.diam = rb.diam;
      best.a = a;
      best.b = b;
    }
  };
  for (const auto& z : fs.zones()) {
    if (anchor) {
      const auto [iu, iv] = *anchor;
      if (!(z.first <= iu && iv <= z.last)) continue;
      for (int l = z.first; l <= iu; ++l) {
        consider(fs.search_row(l, iv, z.last, best.stats, budget));
        if (budget.exceeded) return best;
      }
    } else {
      const std::vector<int> vs = fs.zone_vertices(z);
      if (vs.size() < 2) continue;
      for (int l = z.first; l <= vs[vs.size() - 2]; ++l) {
        const auto it = std::lower_bound(vs.begin(), vs.end(), l);
        if (it + 1 == vs.end()) break;
        consider(fs.search_row(l, *(it + 1), z.last, best.stats, budget));
        if (budget.exceeded) return best;
      }
    }
  }
  (void)net;
  return best;
}

double contact_eccentricity(const Network& net, const DistanceMatrix& dm, const LocusPoint& p) {
  const double len = net.edge_length[p.edge];
  double best = std::max(p.t * len, (1.0 - p.t) * len);
  for (int f = 0; f < net.edge_count(); ++f) {
    if (f == p.edge) continue;
    const double ds = std::min(p.t * len + dm(net.edges[p.edge][0], net.edges[f][0]),
                               (1.0 - p.t) * len + dm(net.edges[p.edge][1], net.edges[f][0]));
    const double dt = std::min(p.t * len + dm(net.edges[p.edge][0], net.edges[f][1]),
                               (1.0 - p.t) * len + dm(net.edges[p.edge][1], net.edges[f][1]));
    best = std::max(best, 0.5 * (ds + dt + net.edge_length[f]));
  }
  return best;
}

}  // namespace

std::vector<double> extension_eccentricities(const Network& net, int u, int v, Direction dir) {
  if (u == v || u < 0 || v < 0 || u >= net.vertex_count() || v >= net.vertex_count())
    throw Error(ErrorCode::BadParameter, "anchors must be two distinct vertices");
  const FamilySearch fs(net, net.vertices[u], net.vertices[v] - net.vertices[u]);
  const int iu = fs.contact_of_vertex(u);
  const int iv = fs.contact_of_vertex(v);
  assert(iu >= 0 && iv >= 0 && iu < iv);
  const int z = fs.zone_containing(iu, iv);
  if (z >= 0) {
    const auto& zone = fs.zones()[z];
    return fs.direction_ecc(iu, iv, dir, dir == Direction::Right ? zone.last : zone.first);
  }
  // Blocked family (the anchor chord runs along edges): report base-network
  // eccentricities of the covered contacts.
  const DistanceMatrix dm = compute_distances(net);
  const int last = static_cast<int>(fs.contacts().contacts.size()) - 1;
  std::vector<double> out;
  const int steps = dir == Direction::Right ? last - iv : iu;
  double run = 0.0;
  for (int i = iu; i <= iv; ++i)
    run = std::max(run, contact_eccentricity(net, dm, fs.contacts().contacts[i].where));
  out.push_back(run);
  for (int i = 1; i <= steps; ++i) {
    const int idx = dir == Direction::Right ? iv + i : iu - i;
    run = std::max(run, contact_eccentricity(net, dm, fs.contacts().contacts[idx].where));
    out.push_back(run);
  }
  return out;
}

ExtensionSplit extension_split_diameter(const Network& net, const Candidate& c) {
  const AugmentedNetwork aug = insert_segment(net, c);
  const DistanceMatrix dm = compute_distances(aug.net);
  ExtensionSplit out;
  for (const auto& pc : aug.segment_pieces) {
    out.segment_side = std::max(
        out.segment_side, dm(aug.net.edges[pc.edge][0], aug.net.edges[pc.edge][1]));
    for (int f = 0; f < aug.net.edge_count(); ++f)
      if (f != pc.edge)
        out.segment_side = std::max(out.segment_side, edge_pair_max(aug.net, dm, pc.edge, f).value);
  }
  const int n = aug.net.vertex_count();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.network_side = std::max(out.network_side, dm(i, j));
  for (int f = 0; f < aug.net.edge_count(); ++f) {
    if (aug.is_segment_edge(f)) continue;
    for (int g = f + 1; g < aug.net.edge_count(); ++g)
      if (!aug.is_segment_edge(g))
        out.network_side = std::max(out.network_side, edge_pair_max(aug.net, dm, f, g).value);
  }
  return out;
}

BestExtension best_extension(const Network& net, int u, int v) {
  if (u == v) throw Error(ErrorCode::BadParameter, "anchors must differ");
  BestExtension out;
  const FamilySearch fs(net, net.vertices[u], net.vertices[v] - net.vertices[u]);
  const int iu = fs.contact_of_vertex(u);
  const int iv = fs.contact_of_vertex(v);
  FamilySearch::Budget budget;
  const LineBest lb = search_line(net, fs, std::make_pair(iu, iv), budget);
  out.stats = lb.stats;
  if (!lb.found) {
    out.diameter = continuous_diameter(net).value;
    return out;
  }
  out.found = true;
  out.candidate = make_candidate(net, lb.a, lb.b);
  out.diameter = lb.diam;
  return out;
}

ApproxResult approx_optimal_shortcut(const Network& net, const ApproxOptions& opts) {
  ApproxResult out;
  out.base = continuous_diameter(net).value;

  Network run = net;
  SubdivisionMap smap;
  bool mapped = false;
  if (opts.epsilon) {
    const double eps = *opts.epsilon;
    if (!(eps > 0.0) || !(eps < net.rho / 2.0))
      throw Error(ErrorCode::BadEpsilon, "epsilon must satisfy 0 < epsilon < rho/2");
    run = subdivide(net, eps, smap);
    mapped = true;
    out.guarantee = 4.0 * eps;
  } else {
    out.guarantee = 4.0 * net.rho;
  }
  if (opts.budget < 0 && run.vertex_count() > 30)
    throw Error(ErrorCode::BudgetExceeded,
                "search space too large for a default run; set an evaluation budget");

  const std::vector<AnchorPair> lines = enumerate_anchor_pairs(run);
  std::vector<LineBest> per_line(lines.size());
  std::atomic<long long> used{0};
  std::atomic<size_t> next{0};
  std::atomic<bool> over{false};

  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= lines.size() || over.load()) return;
      FamilySearch::Budget budget{&used, opts.budget, false};
      const FamilySearch fs(run, run.vertices[lines[i].u],
                            run.vertices[lines[i].v] - run.vertices[lines[i].u]);
      per_line[i] = search_line(run, fs, std::nullopt, budget);
      if (budget.exceeded) over.store(true);
    }
  };
  const int threads = std::max(1, opts.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (over.load())
    throw Error(ErrorCode::BudgetExceeded, "extension evaluation budget exhausted");

  LineBest best;
  for (const LineBest& lb : per_line) {
    out.stats.extensions += lb.stats.extensions;
    out.stats.network_probes += lb.stats.network_probes;
    if (!lb.found) continue;
    const auto key = std::make_tuple(lb.a.edge, lb.a.t, lb.b.edge, lb.b.t);
    const auto cur = std::make_tuple(best.a.edge, best.a.t, best.b.edge, best.b.t);
    if (!best.found || lb.diam < best.diam - 1e-12 || (lb.diam <= best.diam + 1e-12 && key < cur))
      best = lb;
  }

  if (!best.found || best.diam >= out.base - 1e-9) {
    out.diameter = out.base;
    return out;
  }
  LocusPoint a = best.a, b = best.b;
  if (mapped) {
    a = smap.to_base(a);
    b = smap.to_base(b);
  }
  out.candidate = make_candidate(net, a, b);
  out.diameter = diameter_with_segment(net, out.candidate);
  out.found = true;
  return out;
}

}  // namespace netshort
