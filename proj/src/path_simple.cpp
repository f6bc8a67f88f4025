#include "netshort/path_simple.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <tuple>
#include <utility>

#include "netshort/distance.hpp"
#include "netshort/error.hpp"
#include "netshort/oracle.hpp"

namespace netshort {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LocusPoint locus_at(const Network& net, const PathNetwork& path, double pos) {
  pos = std::clamp(pos, 0.0, path.total_length);
  const auto it = std::upper_bound(path.prefix.begin(), path.prefix.end(), pos);
  int k = static_cast<int>(it - path.prefix.begin()) - 1;
  k = std::clamp(k, 0, static_cast<int>(path.edge_of_step.size()) - 1);
  const int e = path.edge_of_step[k];
  const double along = (pos - path.prefix[k]) / net.edge_length[e];
  const bool forward = net.edges[e][0] == path.order[k];
  LocusPoint lp{e, forward ? along : 1.0 - along};
  lp.t = std::clamp(lp.t, 0.0, 1.0);
  return lp;
}

// roots of qa t^2 + qb t + qc = 0; barely negative discriminants count as 0
std::vector<double> quad_roots(double qa, double qb, double qc) {
  if (std::abs(qa) < 1e-14) {
    if (std::abs(qb) < 1e-14) return {};
    return {-qc / qb};
  }
  double disc = qb * qb - 4.0 * qa * qc;
  if (disc < -1e-12) return {};
  disc = std::max(disc, 0.0);
  const double r = std::sqrt(disc);
  return {(-qb - r) / (2.0 * qa), (-qb + r) / (2.0 * qa)};
}

class CandidatePool {
 public:
  explicit CandidatePool(const Network& net) : net_(net) {}

  void try_add(const LocusPoint& a, const LocusPoint& b) {
    try {
      add(make_candidate(net_, a, b));
    } catch (const Error&) {
      // degenerate or collinear: not a segment candidate
    }
  }

  void add(const Candidate& c) {
    auto key = std::make_tuple(c.a.edge, std::llround(c.a.t * 1e9), c.b.edge,
                               std::llround(c.b.t * 1e9));
    auto rev = std::make_tuple(c.b.edge, std::llround(c.b.t * 1e9), c.a.edge,
                               std::llround(c.a.t * 1e9));
    if (!seen_.insert(std::min(key, rev)).second) return;
    out.push_back(c);
  }

  std::vector<Candidate> out;

 private:
  const Network& net_;
  std::set<std::tuple<int, long long, int, long long>> seen_;
};

}  // namespace

SimpleShortcutDiagnostics simple_diagnostics(const Network& net, const Candidate& c) {
  const PathNetwork path = as_path(net);
  if (!c.crossings.empty())
    throw Error(ErrorCode::NotSimple, "candidate touches the path beyond its endpoints");

  SimpleShortcutDiagnostics d;
  const double pos_a = path_position(net, path, c.a);
  const double pos_b = path_position(net, path, c.b);
  const double pos_p = std::min(pos_a, pos_b);
  const double pos_q = std::max(pos_a, pos_b);
  d.p = pos_a <= pos_b ? c.a : c.b;
  d.q = pos_a <= pos_b ? c.b : c.a;
  d.chord = length(c.seg);
  d.x = pos_p;
  d.y = path.total_length - pos_q;
  const double dp = pos_q - pos_p;
  d.z = 0.5 * (dp - d.chord);
  d.cycle_len = dp + d.chord;
  d.p_far = locus_at(net, path, pos_p + 0.5 * d.cycle_len);
  d.q_far = locus_at(net, path, pos_q - 0.5 * d.cycle_len);
  d.gate = d.x <= d.y ? (d.x <= d.z ? 0 : 2) : (d.y <= d.z ? 1 : 2);
  d.diameter = d.chord + d.x + d.y + d.z - std::min({d.x, d.y, d.z});
  return d;
}

std::vector<Candidate> solve_equal_offsets(const Network& net) {
  const PathNetwork path = as_path(net);
  const double total = path.total_length;
  CandidatePool pool(net);

  // cut so the i-th piece from either end has the same length
  std::vector<double> cuts;
  for (const double p : path.prefix) {
    cuts.push_back(p);
    cuts.push_back(total - p);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
             cuts.end());

  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a1 = cuts[k];
    const double b1 = cuts[k + 1];
    const double piece = b1 - a1;
    if (piece <= 1e-12 || a1 > 0.5 * total + 1e-12) continue;

    const Point p0 = locate(net, locus_at(net, path, a1));
    const Point p1 = locate(net, locus_at(net, path, b1));
    const Point q0 = locate(net, locus_at(net, path, total - a1));
    const Point q1 = locate(net, locus_at(net, path, total - b1));
    const Point d1{(p1.x - p0.x) / piece, (p1.y - p0.y) / piece};
    const Point dq{(q0.x - q1.x) / piece, (q0.y - q1.y) / piece};
    const Point w = q0 - p0;
    const Point u = d1 + dq;
    const double big_a = total - 4.0 * a1;

    // p at a1 + t, q mirrored at total - a1 - t, so x = y always; x = z
    // becomes |pq(t)| = A - 4t with |pq(t)|^2 = |w - t*u|^2
    const double qa = u.x * u.x + u.y * u.y - 16.0;
    const double qb = -2.0 * (w.x * u.x + w.y * u.y) + 8.0 * big_a;
    const double qc = w.x * w.x + w.y * w.y - big_a * big_a;
    for (const double t : quad_roots(qa, qb, qc)) {
      if (t < -1e-12 || t > piece + 1e-12) continue;
      if (big_a - 4.0 * t < -1e-9) continue;  // chord length must be nonnegative
      const double pos_p = a1 + std::clamp(t, 0.0, piece);
      const double pos_q = total - pos_p;
      if (pos_q - pos_p <= 1e-9) continue;
      pool.try_add(locus_at(net, path, pos_p), locus_at(net, path, pos_q));
    }
  }
  return pool.out;
}

std::vector<Candidate> solve_vertex_anchored(const Network& net) {
  const PathNetwork path = as_path(net);
  const double total = path.total_length;
  const int n = static_cast<int>(path.order.size());
  CandidatePool pool(net);

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      pool.try_add(vertex_locus_point(net, path.order[i]),
                   vertex_locus_point(net, path.order[j]));

  for (int i = 0; i < n; ++i) {
    const double pos_v = path.prefix[i];
    const Point v_pt = net.vertices[path.order[i]];

    // vertex as p: q slides on a later edge
    for (int k = i; k + 1 < n; ++k) {
      const double c0 = path.prefix[k];
      const double len = path.prefix[k + 1] - path.prefix[k];
      const Point e0 = net.vertices[path.order[k]];
      const Point e1 = net.vertices[path.order[k + 1]];
      const Point d{(e1.x - e0.x) / len, (e1.y - e0.y) / len};
      const Point w = e0 - v_pt;
      const double w2 = w.x * w.x + w.y * w.y;
      const double wd = w.x * d.x + w.y * d.y;

      auto emit = [&](double t, double chord) {
        if (t < -1e-12 || t > len + 1e-12 || chord < -1e-9) return;
        const double pos_q = c0 + std::clamp(t, 0.0, len);
        if (pos_q - pos_v <= 1e-9) return;
        pool.try_add(vertex_locus_point(net, path.order[i]), locus_at(net, path, pos_q));
      };

      // x = z: |pq| = t + k0, linear since the t^2 terms cancel
      const double k0 = c0 - 3.0 * pos_v;
      if (std::abs(wd - k0) > 1e-12) {
        const double t = (k0 * k0 - w2) / (2.0 * (wd - k0));
        emit(t, t + k0);
      }
      // y = z: |pq| = 3t + k1
      const double k1 = 3.0 * c0 - pos_v - 2.0 * total;
      for (const double t : quad_roots(8.0, 6.0 * k1 - 2.0 * wd, k1 * k1 - w2))
        emit(t, 3.0 * t + k1);
      // x = y pins q outright
      emit(total - c0 - pos_v, 1.0);
    }

    // vertex as q: p slides on an earlier edge
    for (int k = 0; k < i; ++k) {
      const double c0 = path.prefix[k];
      const double len = path.prefix[k + 1] - path.prefix[k];
      const Point e0 = net.vertices[path.order[k]];
      const Point e1 = net.vertices[path.order[k + 1]];
      const Point d{(e1.x - e0.x) / len, (e1.y - e0.y) / len};
      const Point w = e0 - v_pt;
      const double w2 = w.x * w.x + w.y * w.y;
      const double wd = w.x * d.x + w.y * d.y;
      const double y = total - pos_v;

      auto emit = [&](double t, double chord) {
        if (t < -1e-12 || t > len + 1e-12 || chord < -1e-9) return;
        const double pos_p = c0 + std::clamp(t, 0.0, len);
        if (pos_v - pos_p <= 1e-9) return;
        pool.try_add(locus_at(net, path, pos_p), vertex_locus_point(net, path.order[i]));
      };

      // y = z: |pq| = -t + k2, linear
      const double k2 = pos_v - c0 - 2.0 * y;
      if (std::abs(wd + k2) > 1e-12) {
        const double t = (k2 * k2 - w2) / (2.0 * (wd + k2));
        emit(t, -t + k2);
      }
      // x = z: |pq| = -3t + k3
      const double k3 = pos_v - 3.0 * c0;
      for (const double t : quad_roots(8.0, -(2.0 * wd + 6.0 * k3), k3 * k3 - w2))
        emit(t, -3.0 * t + k3);
      // x = y pins p
      emit(total - pos_v - c0, 1.0);
    }
  }
  return pool.out;
}

namespace {

struct PivotEval {
  bool valid = false;
  double pos_p = 0.0, pos_q = 0.0;
  double x = 0.0, y = 0.0, z = 0.0;
  double diam = kInf;
};

}  // namespace

std::vector<Candidate> solve_pivot(const Network& net) {
  const PathNetwork path = as_path(net);
  const double total = path.total_length;
  const int n = static_cast<int>(path.order.size());
  CandidatePool pool(net);
  constexpr int kGrid = 64;

  for (int m = 1; m + 1 < n; ++m) {
    const Point w_pt = net.vertices[path.order[m]];
    const double pos_w = path.prefix[m];
    for (int i = 0; i < m; ++i) {
      const double ci = path.prefix[i];
      const double leni = path.prefix[i + 1] - path.prefix[i];
      const Point a0 = net.vertices[path.order[i]];
      const Point a1 = net.vertices[path.order[i + 1]];
      for (int j = m; j + 1 < n; ++j) {
        const double cj = path.prefix[j];
        const double lenj = path.prefix[j + 1] - path.prefix[j];
        const Point b0 = net.vertices[path.order[j]];
        const Point b1 = net.vertices[path.order[j + 1]];

        auto eval = [&](double lam) {
          PivotEval ev;
          const Point p{a0.x + lam / leni * (a1.x - a0.x), a0.y + lam / leni * (a1.y - a0.y)};
          const Point dir = w_pt - p;
          if (std::abs(dir.x) + std::abs(dir.y) < 1e-12) return ev;
          const double den = cross(b1 - b0, dir);
          if (std::abs(den) < 1e-12) return ev;
          const double t = cross(p - b0, dir) / den;
          if (t < 1e-9 || t > 1.0 - 1e-9) return ev;
          const Point q{b0.x + t * (b1.x - b0.x), b0.y + t * (b1.y - b0.y)};
          if ((w_pt.x - p.x) * (q.x - w_pt.x) + (w_pt.y - p.y) * (q.y - w_pt.y) <= 1e-12)
            return ev;  // pivot vertex must sit strictly between p and q
          ev.pos_p = ci + lam;
          ev.pos_q = cj + t * lenj;
          if (ev.pos_q <= pos_w + 1e-9 || ev.pos_p >= pos_w - 1e-9) return ev;
          const double chord = dist(p, w_pt) + dist(w_pt, q);
          ev.x = ev.pos_p;
          ev.y = total - ev.pos_q;
          ev.z = 0.5 * (ev.pos_q - ev.pos_p - chord);
          ev.diam = chord + ev.x + ev.y + ev.z - std::min({ev.x, ev.y, ev.z});
          ev.valid = true;
          return ev;
        };

        auto emit = [&](double lam) {
          const PivotEval ev = eval(lam);
          if (!ev.valid) return;
          pool.try_add(locus_at(net, path, ev.pos_p), locus_at(net, path, ev.pos_q));
        };

        std::vector<PivotEval> grid(kGrid + 1);
        for (int s = 0; s <= kGrid; ++s)
          grid[s] = eval(leni * (s + 0.5) / (kGrid + 1));
        auto lam_of = [&](int s) { return leni * (s + 0.5) / (kGrid + 1); };

        const std::array<std::function<double(const PivotEval&)>, 3> gaps = {
            [](const PivotEval& e) { return e.x - e.y; },
            [](const PivotEval& e) { return e.x - e.z; },
            [](const PivotEval& e) { return e.y - e.z; }};
        for (int s = 0; s + 1 <= kGrid; ++s) {
          if (!grid[s].valid || !grid[s + 1].valid) continue;
          for (const auto& gap : gaps) {
            double g0 = gap(grid[s]), g1 = gap(grid[s + 1]);
            if (g0 == 0.0) {
              emit(lam_of(s));
              continue;
            }
            if (g0 * g1 > 0.0) continue;
            double lo = lam_of(s), hi = lam_of(s + 1);
            for (int it = 0; it < 60; ++it) {
              const double mid = 0.5 * (lo + hi);
              const PivotEval ev = eval(mid);
              if (!ev.valid) break;
              if (g0 * gap(ev) <= 0.0)
                hi = mid;
              else
                lo = mid;
            }
            emit(0.5 * (lo + hi));
          }
          // interior minima of the diameter formula, refined by ternary search
          if (s >= 1 && grid[s - 1].valid && grid[s].diam < grid[s - 1].diam - 1e-12 &&
              grid[s].diam < grid[s + 1].diam - 1e-12) {
            double lo = lam_of(s - 1), hi = lam_of(s + 1);
            for (int it = 0; it < 80; ++it) {
              const double l1 = lo + (hi - lo) / 3.0, l2 = hi - (hi - lo) / 3.0;
              const PivotEval e1 = eval(l1), e2 = eval(l2);
              if (!e1.valid || !e2.valid) break;
              if (e1.diam < e2.diam)
                hi = l2;
              else
                lo = l1;
            }
            emit(0.5 * (lo + hi));
          }
        }
      }
    }
  }
  return pool.out;
}

CandidateClass classify_candidate(const Network& net, const Candidate& c) {
  (void)net;  // contact set was resolved (with coincidence merging) at build time
  if (c.crossings.empty()) return CandidateClass::S;
  if (c.crossings.size() == 1) return CandidateClass::L;
  return CandidateClass::X;
}

SimpleShortcutResult optimal_simple_shortcut(const Network& net) {
  const PathNetwork path = as_path(net);
  SimpleShortcutResult out;
  out.base = continuous_diameter(net).value;
  out.diameter = out.base;

  // three-case value under the simple topology; for a grazing candidate this
  // is the limit of nearby simple values, not the planar insertion value
  auto formula_value = [&](const Candidate& c) {
    const double pos_a = path_position(net, path, c.a);
    const double pos_b = path_position(net, path, c.b);
    const double pos_p = std::min(pos_a, pos_b);
    const double pos_q = std::max(pos_a, pos_b);
    const double chord = length(c.seg);
    const double x = pos_p;
    const double y = path.total_length - pos_q;
    const double z = 0.5 * (pos_q - pos_p - chord);
    return chord + x + y + z - std::min({x, y, z});
  };

  std::vector<Candidate> pool = solve_equal_offsets(net);
  {
    std::vector<Candidate> more = solve_vertex_anchored(net);
    pool.insert(pool.end(), more.begin(), more.end());
    more = solve_pivot(net);
    pool.insert(pool.end(), more.begin(), more.end());
  }

  bool have = false;
  bool best_simple = false;
  double best = kInf;
  const Candidate* best_cand = nullptr;
  auto key = [](const Candidate& c) {
    return std::make_tuple(c.a.edge, c.a.t, c.b.edge, c.b.t);
  };
  for (const Candidate& c : pool) {
    const CandidateClass cls = classify_candidate(net, c);
    if (cls == CandidateClass::X) continue;
    const double val = formula_value(c);
    const bool simple = cls == CandidateClass::S;
    bool take = false;
    if (!have || val < best - 1e-9) {
      take = true;
    } else if (val <= best + 1e-9) {
      if (simple && !best_simple)
        take = true;  // attainment witness beats a limit at the same value
      else if (simple == best_simple && key(c) < key(*best_cand))
        take = true;
    }
    if (take) {
      have = true;
      best = val;
      best_simple = simple;
      best_cand = &c;
    }
  }

  if (!have || best >= out.base - 1e-9) return out;  // no improving candidate
  out.diameter = best;
  if (best_simple) {
    out.exists = true;
    out.candidate = *best_cand;
  }
  return out;
}

namespace {

// Boundary of the convex hull, keeping collinear boundary vertices so hull
// edges never pass through a vertex.
std::vector<int> hull_boundary(const std::vector<Point>& pts) {
  std::vector<int> idx(pts.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
    return pts[a].y < pts[b].y;
  });
  auto build = [&](bool lower) {
    std::vector<int> h;
    for (size_t s = 0; s < idx.size(); ++s) {
      const int i = idx[lower ? s : idx.size() - 1 - s];
      while (h.size() >= 2) {
        const Point& a = pts[h[h.size() - 2]];
        const Point& b = pts[h.back()];
        if (cross(b - a, pts[i] - b) < -1e-12)
          h.pop_back();
        else
          break;
      }
      h.push_back(i);
    }
    return h;
  };
  std::vector<int> lower = build(true), upper = build(false);
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  return lower;
}

bool face_is_convex(const std::vector<Point>& poly) {
  const int k = static_cast<int>(poly.size());
  for (int i = 0; i < k; ++i) {
    const Point a = poly[i];
    const Point b = poly[(i + 1) % k];
    const Point c = poly[(i + 2) % k];
    const Point d1 = b - a;
    const Point d2 = c - b;
    const double cr = cross(d1, d2);
    if (cr < -1e-9) return false;
    if (std::abs(cr) <= 1e-9 && d1.x * d2.x + d1.y * d2.y < 0.0) return false;  // slit
  }
  return true;
}

}  // namespace

ExistenceCheck existence_sufficient(const Network& net) {
  ExistenceCheck out;
  OracleConfig cfg;
  const GridSearchResult probe = grid_shortcut_search(net, cfg, /*simple_only=*/true);
  if (!probe.found || probe.diameter >= probe.base - 1e-9) {
    out.status = ExistenceCheck::Status::NoSimpleShortcut;
    out.verdict = false;
    return out;
  }

  const std::vector<int> hull = hull_boundary(net.vertices);
  Network aug = net;
  for (size_t k = 0; k < hull.size(); ++k) {
    const int a = hull[k];
    const int b = hull[(k + 1) % hull.size()];
    if (a == b) continue;
    const Point pa = net.vertices[a];
    const Point pb = net.vertices[b];
    const double len = dist(pa, pb);
    if (len <= kGeomEps) continue;
    const Point dir = (1.0 / len) * (pb - pa);
    // insert only the parts of the hull edge not already running along edges
    const LineContacts lc = line_locus_contacts(aug, pa, dir);
    std::vector<std::pair<double, double>> covered;
    for (const auto& iv : lc.overlaps) {
      const double lo = std::max(iv.lo, 0.0);
      const double hi = std::min(iv.hi, len);
      if (hi - lo > 1e-9) covered.push_back({lo, hi});
    }
    std::sort(covered.begin(), covered.end());
    std::vector<std::pair<double, double>> gaps;
    double at = 0.0;
    for (const auto& [lo, hi] : covered) {
      if (lo - at > 1e-9) gaps.push_back({at, lo});
      at = std::max(at, hi);
    }
    if (len - at > 1e-9) gaps.push_back({at, len});
    for (const auto& [lo, hi] : gaps) {
      try {
        const LocusPoint ga = snap_to_locus(aug, pa + lo * dir, 1e-7);
        const LocusPoint gb = snap_to_locus(aug, pa + hi * dir, 1e-7);
        aug = insert_segment(aug, make_candidate(aug, ga, gb)).net;
      } catch (const Error&) {
        // cannot realize this hull piece; stay on the inconclusive side
        out.status = ExistenceCheck::Status::NonConvexFace;
        out.verdict = false;
        return out;
      }
    }
  }

  // half-edge face walk: next = clockwise successor of the twin
  const int ne = aug.edge_count();
  std::vector<std::vector<std::pair<double, int>>> out_half(aug.vertex_count());
  auto org = [&](int h) { return aug.edges[h / 2][h % 2]; };
  auto dst = [&](int h) { return aug.edges[h / 2][1 - h % 2]; };
  for (int h = 0; h < 2 * ne; ++h) {
    const Point d = aug.vertices[dst(h)] - aug.vertices[org(h)];
    out_half[org(h)].push_back({std::atan2(d.y, d.x), h});
  }
  for (auto& v : out_half) std::sort(v.begin(), v.end());
  auto next_half = [&](int h) {
    const int v = dst(h);
    const int twin = h ^ 1;
    const auto& ring = out_half[v];
    for (size_t i = 0; i < ring.size(); ++i)
      if (ring[i].second == twin)
        return ring[(i + ring.size() - 1) % ring.size()].second;
    return -1;
  };

  std::vector<bool> used(2 * ne, false);
  bool all_convex = true;
  for (int h0 = 0; h0 < 2 * ne; ++h0) {
    if (used[h0]) continue;
    std::vector<Point> poly;
    double area2 = 0.0;
    int h = h0;
    do {
      used[h] = true;
      const Point a = aug.vertices[org(h)];
      const Point b = aug.vertices[dst(h)];
      poly.push_back(a);
      area2 += cross(a, b);
      h = next_half(h);
    } while (h >= 0 && h != h0 && !used[h]);
    if (area2 > 1e-12 && !face_is_convex(poly)) all_convex = false;
  }

  out.status =
      all_convex ? ExistenceCheck::Status::ConvexFaces : ExistenceCheck::Status::NonConvexFace;
  out.verdict = all_convex;
  return out;
}

}  // namespace netshort
