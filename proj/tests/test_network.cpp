#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>

#include "../tests/helpers.hpp"
#include "netshort/distance.hpp"
#include "netshort/network.hpp"

using namespace netshort;
using namespace netshort::testing;

namespace {
// BudgetExceeded is never expected below, so "did not throw" cannot pass.
ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::BudgetExceeded;
}
}  // namespace

TEST_SUITE("network") {

TEST_CASE("square network is indexed correctly") {
  const Network net = square_net();
  CHECK(net.vertex_count() == 4);
  CHECK(net.edge_count() == 4);
  for (int e = 0; e < 4; ++e) CHECK(net.edge_length[e] == doctest::Approx(1.0));
  CHECK(net.rho == doctest::Approx(1.0));
  for (int v = 0; v < 4; ++v) CHECK(net.degree(v) == 2);
  // vertex 0 belongs to the first and last edges
  REQUIRE(net.incident[0].size() == 2);
  CHECK(net.incident[0][0] == 0);
  CHECK(net.incident[0][1] == 3);
}

TEST_CASE("duplicate vertices merge and duplicate edges drop") {
  const Network net = build_network({{0, 0}, {1, 0}, {1e-10, 0}},
                                    {{0, 1}, {2, 1}, {1, 0}});
  CHECK(net.vertex_count() == 2);
  CHECK(net.edge_count() == 1);
  CHECK(net.edge_length[0] == doctest::Approx(1.0));
}

TEST_CASE("invalid inputs are rejected with specific codes") {
  CHECK(code_of([] { build_network({}, {}); }) == ErrorCode::EmptyInput);
  CHECK(code_of([] { build_network({{0, 0}, {1, 0}}, {{0, 5}}); }) == ErrorCode::BadIndex);
  CHECK(code_of([] { build_network({{0, 0}, {1, 0}}, {{0, 0}}); }) ==
        ErrorCode::DegenerateEdge);
  // proper crossing
  CHECK(code_of([] {
          build_network({{0, 0}, {2, 2}, {0, 2}, {2, 0}}, {{0, 1}, {2, 3}, {0, 2}});
        }) == ErrorCode::NotPlanar);
  // edge through a foreign vertex interior
  CHECK(code_of([] {
          build_network({{0, 0}, {2, 0}, {1, 0}, {1, 1}}, {{0, 1}, {2, 3}});
        }) == ErrorCode::NotPlanar);
  // overlapping collinear edges
  CHECK(code_of([] {
          build_network({{0, 0}, {2, 0}, {1, 0}, {3, 0}}, {{0, 1}, {2, 3}});
        }) == ErrorCode::NotPlanar);
  CHECK(code_of([] {
          build_network({{0, 0}, {1, 0}, {5, 5}, {6, 5}}, {{0, 1}, {2, 3}});
        }) == ErrorCode::Disconnected);
  CHECK(code_of([] { build_network({{0, 0}, {INFINITY, 0}}, {{0, 1}}); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("locate, normalize and vertex identification") {
  const Network net = square_net();
  CHECK(same_point(locate(net, {0, 0.25}), {0.25, 0}));
  // a parameter within the vertex cushion snaps to the canonical anchor
  const LocusPoint snapped = normalize(net, {1, 1e-12});
  CHECK(snapped.edge == 0);
  CHECK(snapped.t == doctest::Approx(1.0));
  CHECK(locus_vertex(net, {0, 0.5}) == -1);
  CHECK(locus_vertex(net, {1, 0.0}) == 1);
  // vertex 2 anchors on its lowest incident edge
  const LocusPoint v2 = vertex_locus_point(net, 2);
  CHECK(v2.edge == 1);
  CHECK(v2.t == doctest::Approx(1.0));
  CHECK(same_locus_point(net, {1, 1.0}, {2, 0.0}));
  CHECK_FALSE(same_locus_point(net, {0, 0.5}, {2, 0.5}));
}

TEST_CASE("path recognition and path coordinates") {
  const Network sq = square_net();
  CHECK_FALSE(is_path(sq));
  CHECK(code_of([&] { as_path(sq); }) == ErrorCode::NotAPath);

  const Network line = straight_path(2.0, 2);
  REQUIRE(is_path(line));
  const PathNetwork path = as_path(line);
  REQUIRE(path.order.size() == 3);
  CHECK(path.order[0] == 0);
  CHECK(path.order[2] == 2);
  CHECK(path.total_length == doctest::Approx(2.0));
  CHECK(path.prefix[1] == doctest::Approx(1.0));
  CHECK(path_position(line, path, {1, 0.5}) == doctest::Approx(1.5));

  const Network v = vpath_net();
  REQUIRE(is_path(v));
  const PathNetwork vp = as_path(v);
  CHECK(vp.total_length == doctest::Approx(2.0 * std::sqrt(2.0)));
  // star: center has degree 4
  CHECK_FALSE(is_path(star_net()));
}

TEST_CASE("subdivision preserves the metric and maps back") {
  const Network net = square_net();
  SubdivisionMap map;
  const Network sub = subdivide(net, 0.5, map);
  CHECK(sub.vertex_count() == 8);
  CHECK(sub.edge_count() == 8);
  CHECK(sub.rho == doctest::Approx(0.5));
  CHECK(continuous_diameter(sub).value == doctest::Approx(2.0).epsilon(1e-12));
  REQUIRE(static_cast<int>(map.sub_edges.size()) == sub.edge_count());
  for (int e = 0; e < sub.edge_count(); ++e) {
    const LocusPoint here{e, 0.37};
    const LocusPoint base = map.to_base(here);
    CHECK(same_point(locate(sub, here), locate(net, base)));
  }
  // splitting at a coarser pitch than every edge is a no-op
  const Network same = subdivide(net, 5.0);
  CHECK(same.vertex_count() == 4);
  CHECK(same.edge_count() == 4);
}

TEST_CASE("JSON round trip is byte identical") {
  const Network net = square_net();
  const std::string one = write_network_json(net);
  const Network reread = read_network_json(one);
  const std::string two = write_network_json(reread);
  CHECK(one == two);
  // meta is writer-only; the reader ignores it
  const std::string with_meta = write_network_json(net, {{"kind", "square"}});
  CHECK(write_network_json(read_network_json(with_meta)) == one);
}

TEST_CASE("JSON reader rejects malformed input") {
  CHECK(code_of([] { read_network_json("not json"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { read_network_json("{}"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { read_network_json("{\"vertices\": 3, \"edges\": []}"); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] {
          read_network_json("{\"vertices\": [[0,0],[\"a\",0]], \"edges\": [[0,1]]}");
        }) == ErrorCode::ParseError);
  CHECK(code_of([] {
          read_network_json("{\"vertices\": [[0,0],[1e999,0]], \"edges\": [[0,1]]}");
        }) == ErrorCode::ParseError);
}

TEST_CASE("file round trip and missing files") {
  const Network net = vpath_net();
  const std::string path = "netshort_test_net.json";
  write_network_file(path, net, {{"kind", "vpath"}});
  const Network back = read_network_file(path);
  CHECK(write_network_json(back) == write_network_json(net));
  std::remove(path.c_str());
  CHECK(code_of([] { read_network_file("no_such_dir/missing.json"); }) ==
        ErrorCode::IoError);
}

}  // TEST_SUITE
