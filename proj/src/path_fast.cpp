#include "netshort/path_fast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "netshort/distance.hpp"
#include "netshort/error.hpp"

namespace netshort {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ContactOnPath {
  double pos = 0.0;     // arclength along the path
  double offset = 0.0;  // offset along the shortcut
};

}  // namespace

ChainDecomposition decompose(const Network& net, const Candidate& c) {
  const PathNetwork path = as_path(net);
  const Candidate ext = maximal_extension(net, c);
  if (!same_point(ext.seg.a, c.seg.a) || !same_point(ext.seg.b, c.seg.b))
    throw Error(ErrorCode::NonMaximalCandidate, "candidate must be maximal; extend it first");

  ChainDecomposition dec;
  dec.candidate = c;
  dec.shortcut_len = length(c.seg);

  std::vector<ContactOnPath> contacts;
  contacts.push_back({path_position(net, path, c.a), 0.0});
  contacts.push_back({path_position(net, path, c.b), dec.shortcut_len});
  for (const auto& cr : c.crossings)
    contacts.push_back(
        {path_position(net, path, {cr.edge, cr.t_edge}), cr.t_seg * dec.shortcut_len});
  std::sort(contacts.begin(), contacts.end(),
            [](const ContactOnPath& a, const ContactOnPath& b) { return a.pos < b.pos; });

  auto add_chain = [&](double xl, double xr, double len, bool loop, double lo, double hi) {
    Chain ch;
    ch.xl = std::min(xl, xr);
    ch.xr = std::max(xl, xr);
    ch.len = len;
    ch.left = ch.xl;
    ch.right = dec.shortcut_len - ch.xr;
    ch.chord = ch.xr - ch.xl;
    ch.semi = 0.5 * (ch.len + ch.chord);
    ch.loop = loop;
    ch.path_lo = lo;
    ch.path_hi = hi;
    dec.chains.push_back(ch);
  };

  if (contacts.front().pos > kGeomEps)
    add_chain(contacts.front().offset, contacts.front().offset, 2.0 * contacts.front().pos, true,
              0.0, contacts.front().pos);
  for (size_t i = 0; i + 1 < contacts.size(); ++i)
    add_chain(contacts[i].offset, contacts[i + 1].offset, contacts[i + 1].pos - contacts[i].pos,
              false, contacts[i].pos, contacts[i + 1].pos);
  const double tail = path.total_length - contacts.back().pos;
  if (tail > kGeomEps)
    add_chain(contacts.back().offset, contacts.back().offset, 2.0 * tail, true,
              contacts.back().pos, path.total_length);

  std::sort(dec.chains.begin(), dec.chains.end(), [](const Chain& a, const Chain& b) {
    if (a.xl != b.xl) return a.xl < b.xl;
    if (a.xr != b.xr) return a.xr < b.xr;
    return a.path_lo < b.path_lo;
  });
  for (size_t i = 0; i < dec.chains.size(); ++i) dec.chains[i].index = static_cast<int>(i);
  return dec;
}

double two_chain_diameter(ChainPairKind kind, const Chain& ci, const Chain& cj) {
  constexpr double eps = 1e-9;
  switch (kind) {
    case ChainPairKind::Disjoint:
      if (ci.xr > cj.xl + eps)
        throw Error(ErrorCode::KindMismatch, "disjoint needs ci entirely left of cj");
      return ci.semi + std::max(0.0, cj.xl - ci.xr) + cj.semi;
    case ChainPairKind::Nested:
      if (ci.xl > cj.xl + eps || cj.xr > ci.xr + eps)
        throw Error(ErrorCode::KindMismatch, "nested needs cj's chord inside ci's");
      return 0.5 * (ci.len + cj.left - ci.left + cj.right - ci.right + cj.len);
    case ChainPairKind::Overlapping:
      if (ci.xl > cj.xl + eps || ci.xr > cj.xr + eps || cj.xl > ci.xr + eps)
        throw Error(ErrorCode::KindMismatch, "overlapping needs interleaved chords");
      return 0.5 * (ci.len + cj.left - ci.left + ci.right - cj.right + cj.len);
  }
  throw Error(ErrorCode::KindMismatch, "unknown kind");
}

namespace {

// Static range-argmax; ties resolve to the smaller slot.
class RangeMax {
 public:
  explicit RangeMax(std::vector<double> v) : v_(std::move(v)) {
    const int n = static_cast<int>(v_.size());
    log_.assign(n + 1, 0);
    for (int i = 2; i <= n; ++i) log_[i] = log_[i / 2] + 1;
    idx_.assign(log_[n] + 1, std::vector<int>(n));
    for (int i = 0; i < n; ++i) idx_[0][i] = i;
    for (int k = 1; (1 << k) <= n; ++k)
      for (int i = 0; i + (1 << k) <= n; ++i)
        idx_[k][i] = better(idx_[k - 1][i], idx_[k - 1][i + (1 << (k - 1))]);
  }

  int argmax(int lo, int hi) const {
    if (lo > hi) return -1;
    const int k = log_[hi - lo + 1];
    const int j = better(idx_[k][lo], idx_[k][hi - (1 << k) + 1]);
    return v_[j] == -kInf ? -1 : j;
  }

 private:
  int better(int a, int b) const {
    if (v_[a] != v_[b]) return v_[a] > v_[b] ? a : b;
    return std::min(a, b);
  }

  std::vector<double> v_;
  std::vector<int> log_;
  std::vector<std::vector<int>> idx_;
};

struct Slot {
  double x = 0.0;
  bool left = false;  // left endpoint of its chain
  double xr = 0.0;    // tie-break among left slots: outer chain first
  int chain = -1;
};

}  // namespace

double path_diameter_with_shortcut(const Network& net, const Candidate& c, SweepTrace* trace) {
  const ChainDecomposition dec = decompose(net, c);
  const auto& ch = dec.chains;
  const int m = static_cast<int>(ch.size());
  double best = 0.0;
  for (const Chain& x : ch) best = std::max(best, x.semi);
  if (m < 2) return best;

  // endpoint slots in shortcut order; right slots close before left slots
  // open at equal offsets, and among left slots the wider chain goes first so
  // that nesting at shared contacts is caught by the range query
  std::vector<Slot> slots;
  for (const Chain& x : ch) {
    slots.push_back({x.xl, true, x.xr, x.index});
    slots.push_back({x.xr, false, x.xr, x.index});
  }
  std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.left != b.left) return !a.left;
    if (a.left && a.xr != b.xr) return a.xr > b.xr;
    return a.chain < b.chain;
  });
  std::vector<int> left_slot(m), right_slot(m);
  std::vector<int> slot_chain(slots.size(), -1);
  std::vector<double> beta(slots.size(), -kInf), gamma(slots.size(), -kInf);
  for (size_t s = 0; s < slots.size(); ++s) {
    if (slots[s].left) {
      left_slot[slots[s].chain] = static_cast<int>(s);
      slot_chain[s] = slots[s].chain;
      const Chain& x = ch[slots[s].chain];
      beta[s] = x.len + x.left + x.right;
      gamma[s] = x.len + x.left - x.right;
    } else {
      right_slot[slots[s].chain] = static_cast<int>(s);
    }
  }
  const RangeMax max_beta(beta);
  const RangeMax max_gamma(gamma);

  // disjoint pairs: running max of D_i + R_i over chains already closed
  double a1 = -kInf, a2 = -kInf;
  int a1_chain = -1;
  for (const Slot& s : slots) {
    const Chain& x = ch[s.chain];
    if (!s.left) {
      const double alpha = x.semi + x.right;
      if (alpha > a1) {
        a2 = a1;
        a1 = alpha;
        a1_chain = s.chain;
      } else {
        a2 = std::max(a2, alpha);
      }
      continue;
    }
    const double alpha = a1_chain == s.chain ? a2 : a1;
    if (alpha > -kInf) best = std::max(best, alpha + x.semi + x.left - dec.shortcut_len);
  }

  // nested/overlapping pairs: either form may be queried for a chain in the
  // range; the wrong form never overestimates, so the combined max is exact
  for (const Chain& x : ch) {
    const int lo = left_slot[x.index] + 1;
    const int hi = right_slot[x.index] - 1;
    if (lo > hi) continue;
    SweepQueryRecord rec;
    rec.chain = x.index;
    const int jn = max_beta.argmax(lo, hi);
    if (jn >= 0) {
      rec.beta_chain = slot_chain[jn];
      rec.beta_value = 0.5 * (x.len - x.left - x.right + beta[jn]);
      best = std::max(best, rec.beta_value);
    }
    const int jo = max_gamma.argmax(lo, hi);
    if (jo >= 0) {
      rec.gamma_chain = slot_chain[jo];
      rec.gamma_value = 0.5 * (x.len - x.left + x.right + gamma[jo]);
      best = std::max(best, rec.gamma_value);
    }
    if (trace && (jn >= 0 || jo >= 0)) trace->queries.push_back(rec);
  }
  return best;
}

Envelope upper_envelope(const std::vector<EnvelopeLine>& lines, double ya, double yb) {
  if (lines.empty()) throw Error(ErrorCode::EmptyInput, "no lines to build an envelope from");
  if (ya > yb) std::swap(ya, yb);

  // slope-sorted hull of the max of lines
  std::vector<int> order(lines.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (lines[i].a != lines[j].a) return lines[i].a < lines[j].a;
    if (lines[i].b != lines[j].b) return lines[i].b < lines[j].b;
    return i < j;
  });
  std::vector<int> keep;
  for (const int i : order) {
    if (!keep.empty() && lines[keep.back()].a == lines[i].a) keep.pop_back();
    keep.push_back(i);
  }
  auto cross_y = [&](int i, int j) {  // where line i overtakes line j
    return (lines[j].b - lines[i].b) / (lines[i].a - lines[j].a);
  };
  std::vector<int> hull;
  std::vector<double> from;  // hull[k] is on top starting at from[k]
  for (const int i : keep) {
    double start = -kInf;
    while (!hull.empty()) {
      start = cross_y(i, hull.back());
      if (start <= from.back()) {
        hull.pop_back();
        from.pop_back();
        start = -kInf;
        continue;
      }
      break;
    }
    if (hull.empty()) start = -kInf;
    hull.push_back(i);
    from.push_back(start);
  }

  Envelope env;
  for (size_t k = 0; k < hull.size(); ++k) {
    const double y0 = std::max(ya, from[k]);
    const double y1 = std::min(yb, k + 1 < hull.size() ? from[k + 1] : kInf);
    if (y0 > y1) continue;
    env.pieces.push_back({y0, y1, hull[k]});
  }

  auto value_at = [&](double y) {
    double v = -kInf;
    for (const EnvelopeLine& ln : lines) v = std::max(v, ln.a * y + ln.b);
    return v;
  };
  std::vector<double> probes = {ya, yb};
  for (const auto& pc : env.pieces) {
    probes.push_back(pc.y0);
    probes.push_back(pc.y1);
  }
  std::sort(probes.begin(), probes.end());
  env.min_value = kInf;
  env.min_y = ya;
  for (const double y : probes) {
    if (y < ya || y > yb) continue;
    const double v = value_at(y);
    if (v < env.min_value - 1e-12) {
      env.min_value = v;
      env.min_y = y;
    }
  }
  return env;
}

namespace {

struct StripMin {
  double value = kInf;
  double y = 0.0;
};

std::optional<ChainDecomposition> horizontal_decomposition(const Network& net, double y) {
  const LineContacts lc = line_locus_contacts(net, {0.0, y}, {1.0, 0.0});
  if (lc.contacts.size() < 2) return std::nullopt;
  try {
    const Candidate cand =
        make_candidate(net, lc.contacts.front().where, lc.contacts.back().where);
    return decompose(net, cand);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

FixedOrientationResult optimal_fixed_orientation_shortcut(const Network& net, double angle_deg) {
  as_path(net);  // path methods only
  FixedOrientationResult out;
  out.base = continuous_diameter(net).value;
  out.diameter = out.base;

  const double th = angle_deg * std::acos(-1.0) / 180.0;
  const double co = std::cos(th), si = std::sin(th);
  std::vector<Point> pts;
  pts.reserve(net.vertices.size());
  for (const Point& p : net.vertices) pts.push_back({co * p.x + si * p.y, -si * p.x + co * p.y});
  const Network rot = build_network(pts, net.edges);

  std::vector<double> levels;
  for (const Point& p : rot.vertices) levels.push_back(p.y);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end(),
                           [](double a, double b) { return std::abs(a - b) <= 1e-9; }),
               levels.end());

  std::vector<StripMin> minima;
  for (size_t s = 0; s + 1 < levels.size(); ++s) {
    const double y0 = levels[s], y1 = levels[s + 1];
    if (y1 - y0 <= 1e-9) continue;
    const double t1 = y0 + (y1 - y0) / 3.0;
    const double t2 = y0 + 2.0 * (y1 - y0) / 3.0;
    const auto d1 = horizontal_decomposition(rot, t1);
    const auto d2 = horizontal_decomposition(rot, t2);
    if (!d1 || !d2 || d1->chains.size() != d2->chains.size()) continue;

    std::vector<EnvelopeLine> strip_lines;
    auto add_line = [&](double v1, double v2) {
      const double a = (v2 - v1) / (t2 - t1);
      strip_lines.push_back({a, v1 - a * t1, static_cast<int>(strip_lines.size())});
    };
    bool ok = true;
    try {
      const int m = static_cast<int>(d1->chains.size());
      for (int i = 0; i < m && ok; ++i) {
        const Chain& c1 = d1->chains[i];
        const Chain& c2 = d2->chains[i];
        if (c1.loop != c2.loop) {
          ok = false;
          break;
        }
        add_line(c1.semi, c2.semi);
        for (int j = i + 1; j < m; ++j) {
          const Chain& e1 = d1->chains[j];
          const Chain& e2 = d2->chains[j];
          ChainPairKind kind = ChainPairKind::Overlapping;
          if (c1.xr <= e1.xl + 1e-12)
            kind = ChainPairKind::Disjoint;
          else if (e1.xr <= c1.xr + 1e-12)
            kind = ChainPairKind::Nested;
          add_line(two_chain_diameter(kind, c1, e1), two_chain_diameter(kind, c2, e2));
        }
      }
    } catch (const Error&) {
      ok = false;  // structure shifted inside the strip; skip it
    }
    if (!ok || strip_lines.empty()) continue;
    const Envelope env = upper_envelope(strip_lines, y0, y1);
    minima.push_back({env.min_value, env.min_y});
  }

  std::sort(minima.begin(), minima.end(), [](const StripMin& a, const StripMin& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.y < b.y;
  });
  for (const StripMin& sm : minima) {
    if (sm.value >= out.base - 1e-9) break;
    const LineContacts lc = line_locus_contacts(rot, {0.0, sm.y}, {1.0, 0.0});
    if (lc.contacts.size() < 2) continue;
    try {
      // same edge ids and parameters hold in the unrotated network
      const Candidate probe =
          make_candidate(rot, lc.contacts.front().where, lc.contacts.back().where);
      const Candidate cand = make_candidate(net, probe.a, probe.b);
      const double exact = diameter_with_segment(net, cand);
      if (exact < out.base - 1e-9) {
        out.found = true;
        out.candidate = cand;
        out.diameter = exact;
        return out;
      }
    } catch (const Error&) {
      continue;  // boundary height not insertable: infimum unattained there
    }
  }
  return out;
}

}  // namespace netshort
