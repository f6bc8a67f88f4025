#include "netshort/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace netshort {

namespace {

void check_finite(const std::vector<Point>& vertices) {
  for (const Point& p : vertices) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::ParseError, "non-finite vertex coordinate");
    }
  }
}

}  // namespace

Network build_network(const std::vector<Point>& raw_vertices,
                      const std::vector<std::array<int, 2>>& raw_edges) {
  if (raw_vertices.empty() || raw_edges.empty())
    throw Error(ErrorCode::EmptyInput, "network needs vertices and edges");
  check_finite(raw_vertices);

  // Merge vertices that coincide within tolerance.
  std::vector<Point> vertices;
  std::vector<int> remap(raw_vertices.size());
  for (size_t i = 0; i < raw_vertices.size(); ++i) {
    int found = -1;
    for (size_t j = 0; j < vertices.size(); ++j) {
      if (same_point(vertices[j], raw_vertices[i])) {
        found = static_cast<int>(j);
        break;
      }
    }
    if (found < 0) {
      found = static_cast<int>(vertices.size());
      vertices.push_back(raw_vertices[i]);
    }
    remap[i] = found;
  }

  Network net;
  net.vertices = vertices;
  std::set<std::pair<int, int>> seen;
  for (const auto& e : raw_edges) {
    if (e[0] < 0 || e[1] < 0 || e[0] >= static_cast<int>(raw_vertices.size()) ||
        e[1] >= static_cast<int>(raw_vertices.size())) {
      throw Error(ErrorCode::BadIndex, "edge endpoint index out of range");
    }
    int a = remap[e[0]];
    int b = remap[e[1]];
    if (a == b) throw Error(ErrorCode::DegenerateEdge, "zero-length edge");
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) continue;  // duplicate edge, drop
    net.edges.push_back({a, b});
  }

  net.incident.assign(net.vertices.size(), {});
  net.edge_length.resize(net.edges.size());
  for (int e = 0; e < net.edge_count(); ++e) {
    net.edge_length[e] = length(net.edge_segment(e));
    if (net.edge_length[e] <= kGeomEps) {
      throw Error(ErrorCode::DegenerateEdge, "zero-length edge");
    }
    net.rho = std::max(net.rho, net.edge_length[e]);
    net.incident[net.edges[e][0]].push_back(e);
    net.incident[net.edges[e][1]].push_back(e);
  }

  // Planarity: edges meet only at shared endpoints, and no edge passes
  // through a foreign vertex.
  for (int e = 0; e < net.edge_count(); ++e) {
    const Segment se = net.edge_segment(e);
    for (int f = e + 1; f < net.edge_count(); ++f) {
      const bool adjacent = net.edges[e][0] == net.edges[f][0] ||
                            net.edges[e][0] == net.edges[f][1] ||
                            net.edges[e][1] == net.edges[f][0] ||
                            net.edges[e][1] == net.edges[f][1];
      const auto isect = segment_intersection(se, net.edge_segment(f));
      if (isect.kind == SegmentIntersection::Kind::Overlap) {
        throw Error(ErrorCode::NotPlanar, "collinear overlapping edges");
      }
      if (isect.kind == SegmentIntersection::Kind::Point && !adjacent) {
        throw Error(ErrorCode::NotPlanar, "edges cross outside shared endpoints");
      }
    }
    for (int v = 0; v < net.vertex_count(); ++v) {
      if (v == net.edges[e][0] || v == net.edges[e][1]) continue;
      if (point_segment_distance(se, net.vertices[v]) <= kGeomEps) {
        throw Error(ErrorCode::NotPlanar, "edge passes through a vertex");
      }
    }
  }

  // Connectivity.
  if (net.vertex_count() > 1) {
    std::vector<char> visited(net.vertex_count(), 0);
    std::vector<int> stack = {0};
    visited[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int e : net.incident[v]) {
        const int w = net.edges[e][0] == v ? net.edges[e][1] : net.edges[e][0];
        if (!visited[w]) {
          visited[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    if (count != net.vertex_count()) {
      throw Error(ErrorCode::Disconnected, "network is not connected");
    }
  }
  return net;
}

Network assemble_network(std::vector<Point> vertices, std::vector<std::array<int, 2>> edges) {
  Network net;
  net.vertices = std::move(vertices);
  net.edges = std::move(edges);
  net.incident.assign(net.vertices.size(), {});
  net.edge_length.resize(net.edges.size());
  for (int e = 0; e < net.edge_count(); ++e) {
    net.edge_length[e] = length(net.edge_segment(e));
    net.rho = std::max(net.rho, net.edge_length[e]);
    net.incident[net.edges[e][0]].push_back(e);
    net.incident[net.edges[e][1]].push_back(e);
  }
  return net;
}

Point locate(const Network& net, const LocusPoint& p) {
  if (p.edge < 0 || p.edge >= net.edge_count()) {
    throw Error(ErrorCode::BadIndex, "locus point edge id out of range");
  }
  if (p.t < -kGeomEps || p.t > 1.0 + kGeomEps) {
    throw Error(ErrorCode::BadParameter, "locus point parameter outside [0,1]");
  }
  return point_at(net.edge_segment(p.edge), std::clamp(p.t, 0.0, 1.0));
}

LocusPoint normalize(const Network& net, LocusPoint p) {
  if (p.edge < 0 || p.edge >= net.edge_count()) {
    throw Error(ErrorCode::BadIndex, "locus point edge id out of range");
  }
  const double len = net.edge_length[p.edge];
  double t = std::clamp(p.t, 0.0, 1.0);
  if (t * len <= kGeomEps) t = 0.0;
  if ((1.0 - t) * len <= kGeomEps) t = 1.0;
  if (t != 0.0 && t != 1.0) return {p.edge, t};
  const int v = net.edges[p.edge][t == 0.0 ? 0 : 1];
  const int e = *std::min_element(net.incident[v].begin(), net.incident[v].end());
  return {e, net.edges[e][0] == v ? 0.0 : 1.0};
}

bool same_locus_point(const Network& net, LocusPoint a, LocusPoint b) {
  const LocusPoint na = normalize(net, a);
  const LocusPoint nb = normalize(net, b);
  if (na.edge == nb.edge &&
      std::fabs(na.t - nb.t) * net.edge_length[na.edge] <= kGeomEps) {
    return true;
  }
  return same_point(locate(net, na), locate(net, nb));
}

int locus_vertex(const Network& net, const LocusPoint& p) {
  const LocusPoint n = normalize(net, p);
  if (n.t == 0.0) return net.edges[n.edge][0];
  if (n.t == 1.0) return net.edges[n.edge][1];
  return -1;
}

LocusPoint vertex_locus_point(const Network& net, int v) {
  if (v < 0 || v >= net.vertex_count() || net.incident[v].empty())
    throw Error(ErrorCode::BadIndex, "vertex_locus_point: no incident edge");
  const int e = net.incident[v].front();
  return LocusPoint{e, net.edges[e][0] == v ? 0.0 : 1.0};
}

bool is_path(const Network& net) {
  if (net.vertex_count() < 2 || net.edge_count() != net.vertex_count() - 1) return false;
  int ones = 0;
  for (int v = 0; v < net.vertex_count(); ++v) {
    const int d = net.degree(v);
    if (d == 1) {
      ++ones;
    } else if (d != 2) {
      return false;
    }
  }
  return ones == 2;
}

PathNetwork as_path(const Network& net) {
  if (!is_path(net)) throw Error(ErrorCode::NotAPath, "network is not a simple path");
  int u = -1;
  for (int v = 0; v < net.vertex_count(); ++v) {
    if (net.degree(v) == 1) {
      u = v;
      break;
    }
  }
  PathNetwork path;
  path.order.push_back(u);
  path.prefix.push_back(0.0);
  int prev_edge = -1;
  int cur = u;
  while (static_cast<int>(path.order.size()) < net.vertex_count()) {
    int next_edge = -1;
    for (int e : net.incident[cur]) {
      if (e != prev_edge) {
        next_edge = e;
        break;
      }
    }
    const int nxt = net.edges[next_edge][0] == cur ? net.edges[next_edge][1]
                                                   : net.edges[next_edge][0];
    path.edge_of_step.push_back(next_edge);
    path.prefix.push_back(path.prefix.back() + net.edge_length[next_edge]);
    path.order.push_back(nxt);
    prev_edge = next_edge;
    cur = nxt;
  }
  path.total_length = path.prefix.back();
  return path;
}

double path_position(const Network& net, const PathNetwork& path, const LocusPoint& p) {
  const LocusPoint n = normalize(net, p);
  for (size_t i = 0; i < path.edge_of_step.size(); ++i) {
    if (path.edge_of_step[i] != n.edge) continue;
    const bool forward = net.edges[n.edge][0] == path.order[i];
    const double along = (forward ? n.t : 1.0 - n.t) * net.edge_length[n.edge];
    return path.prefix[i] + along;
  }
  throw Error(ErrorCode::BadIndex, "locus point not on path");
}

Network subdivide(const Network& net, double max_len, SubdivisionMap& map_out) {
  if (!(max_len > 0.0)) throw Error(ErrorCode::BadParameter, "max_len must be positive");
  std::vector<Point> vertices = net.vertices;
  std::vector<std::array<int, 2>> edges;
  map_out.sub_edges.clear();
  for (int e = 0; e < net.edge_count(); ++e) {
    const int parts = std::max(1, static_cast<int>(std::ceil(net.edge_length[e] / max_len - kGeomEps)));
    int prev = net.edges[e][0];
    for (int k = 1; k <= parts; ++k) {
      int cur;
      if (k == parts) {
        cur = net.edges[e][1];
      } else {
        cur = static_cast<int>(vertices.size());
        vertices.push_back(point_at(net.edge_segment(e), static_cast<double>(k) / parts));
      }
      edges.push_back({prev, cur});
      const double lo = static_cast<double>(k - 1) / parts;
      const double hi = static_cast<double>(k) / parts;
      // endpoints are stored ascending, so keep t0 at the stored head
      if (prev < cur)
        map_out.sub_edges.push_back({e, lo, hi});
      else
        map_out.sub_edges.push_back({e, hi, lo});
      prev = cur;
    }
  }
  return build_network(vertices, edges);
}

Network subdivide(const Network& net, double max_len) {
  SubdivisionMap unused;
  return subdivide(net, max_len, unused);
}

Network read_network_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges")) {
    throw Error(ErrorCode::ParseError, "expected object with \"vertices\" and \"edges\"");
  }
  std::vector<Point> vertices;
  std::vector<std::array<int, 2>> edges;
  try {
    for (const auto& v : j.at("vertices")) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw Error(ErrorCode::ParseError, "vertex must be a [x, y] number pair");
      }
      vertices.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer()) {
        throw Error(ErrorCode::ParseError, "edge must be an [i, j] index pair");
      }
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid network JSON: ") + e.what());
  }
  check_finite(vertices);
  return build_network(vertices, edges);
}

std::string write_network_json(const Network& net,
                               const std::map<std::string, std::string>& meta) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (const Point& p : net.vertices) j["vertices"].push_back({p.x, p.y});
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : net.edges) j["edges"].push_back({e[0], e[1]});
  if (!meta.empty()) {
    nlohmann::ordered_json m;
    for (const auto& [k, v] : meta) m[k] = v;
    j["meta"] = m;
  }
  return j.dump(2) + "\n";
}

Network read_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_network_json(ss.str());
}

void write_network_file(const std::string& path, const Network& net,
                        const std::map<std::string, std::string>& meta) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << write_network_json(net, meta);
}

}  // namespace netshort
