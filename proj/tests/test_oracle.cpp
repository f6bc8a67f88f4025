#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "helpers.hpp"
#include "netshort/augment.hpp"
#include "netshort/distance.hpp"
#include "netshort/error.hpp"
#include "netshort/network.hpp"
#include "netshort/oracle.hpp"

using namespace netshort;
using namespace netshort::testing;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::MethodMismatch;  // sentinel, never expected below
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("sampled diameter hits grid-aligned extremes exactly") {
  OracleConfig cfg;
  cfg.diameter_samples_per_edge = 50;

  // both diametral pairs sit on sample points (vertices), so no grid error
  const Network v = vpath_net();
  CHECK(std::abs(sampled_diameter(v, cfg) - 2.0 * std::sqrt(2.0)) <= 1e-9);

  const Network w = blocked_w_path();
  const double t = 2.0 * (std::sqrt(5.0) + std::sqrt(2.44));
  CHECK(std::abs(sampled_diameter(w, cfg) - t) <= 1e-9);
}

TEST_CASE("sampled diameter stays within the grid error window") {
  OracleConfig cfg;
  cfg.diameter_samples_per_edge = 25;
  std::mt19937 rng(17);
  for (int trial = 0; trial < 3; ++trial) {
    const Network net = random_planar_net(rng, 7, 2);
    const double exact = continuous_diameter(net).value;
    const double sampled = sampled_diameter(net, cfg);
    CHECK(sampled <= exact + 1e-9);
    CHECK(sampled >= exact - 2.0 * net.rho / cfg.diameter_samples_per_edge - 1e-9);
  }
}

TEST_CASE("sample counts below two are rejected") {
  OracleConfig cfg;
  cfg.diameter_samples_per_edge = 1;
  CHECK(code_of([&] { sampled_diameter(square_net(), cfg); }) == ErrorCode::BadParameter);

  OracleConfig cfg2;
  cfg2.endpoint_samples_per_edge = 1;
  CHECK(code_of([&] { grid_shortcut_search(square_net(), cfg2, false); }) ==
        ErrorCode::BadParameter);
}

TEST_CASE("grid search brackets the V optimum and is deterministic") {
  const Network net = vpath_net();
  OracleConfig cfg;
  cfg.endpoint_samples_per_edge = 9;

  const GridSearchResult a = grid_shortcut_search(net, cfg, false);
  const GridSearchResult b = grid_shortcut_search(net, cfg, false);

  const double s2 = std::sqrt(2.0);
  const double opt = (8.0 * s2 + 4.0) / 7.0;
  CHECK(a.found);
  CHECK(std::abs(a.base - 2.0 * s2) <= 1e-9);
  CHECK(std::abs(a.spacing - s2 / 8.0) <= 1e-12);
  CHECK(a.diameter >= opt - 1e-9);           // grid candidates are a subset
  CHECK(a.diameter <= opt + 2.0 * a.spacing + 1e-9);
  CHECK(a.diameter < a.base - 1e-9);

  CHECK(b.diameter == a.diameter);
  CHECK(b.best.a.edge == a.best.a.edge);
  CHECK(b.best.a.t == a.best.a.t);
  CHECK(b.best.b.edge == a.best.b.edge);
  CHECK(b.best.b.t == a.best.b.t);
}

TEST_CASE("grid search ties resolve to the lexicographically smallest pair") {
  // no chord improves the square, so every valid candidate ties at the base
  const Network net = square_net();
  OracleConfig cfg;
  cfg.endpoint_samples_per_edge = 3;

  const GridSearchResult res = grid_shortcut_search(net, cfg, false);
  CHECK(res.found);
  CHECK(std::abs(res.diameter - 2.0) <= 1e-9);
  CHECK(std::abs(res.base - 2.0) <= 1e-9);
  CHECK(std::abs(res.spacing - 0.5) <= 1e-12);
  CHECK(res.best.a.edge == 0);
  CHECK(res.best.a.t == 0.0);
  CHECK(res.best.b.edge == 1);
  CHECK(res.best.b.t == 0.5);
}

TEST_CASE("straight path yields no valid grid candidate") {
  const GridSearchResult res = grid_shortcut_search(straight_path(3.0, 3), OracleConfig{}, false);
  CHECK(!res.found);
  CHECK(res.diameter == res.base);
}

TEST_CASE("simple-only search skips crossing chords") {
  const Network net = blocked_w_path();
  OracleConfig cfg;
  cfg.endpoint_samples_per_edge = 41;

  const GridSearchResult simple = grid_shortcut_search(net, cfg, true);
  const GridSearchResult any = grid_shortcut_search(net, cfg, false);

  REQUIRE(simple.found);
  REQUIRE(any.found);
  CHECK(simple.best.crossings.empty());
  CHECK(any.diameter <= simple.diameter + 1e-12);  // superset of candidates

  // simple chords must pass above the middle peak; their values stay above
  // the unattained limit but within the grid error of it
  const double t = 2.0 * (std::sqrt(5.0) + std::sqrt(2.44));
  const double z = (t - 0.8 * std::sqrt(5.0) - 3.2) / 2.0;
  const double limit = 3.2 + 0.4 * std::sqrt(5.0) + z;
  CHECK(simple.diameter > limit - 1e-9);
  CHECK(simple.diameter <= limit + 2.0 * simple.spacing + 1e-9);
}

TEST_CASE("spike fixture geometry: all top pairs span the chord length") {
  const SpikeFixture fx = gen_spike_fixture(8, 16.0);
  CHECK(fx.span == 16.0);
  CHECK(fx.left_tops.size() == 4);
  CHECK(fx.right_tops.size() == 4);
  CHECK(is_path(fx.net));
  CHECK(same_point(fx.net.vertices[0], Point{0.0, 0.0}));
  CHECK(same_point(fx.net.vertices[fx.net.vertex_count() - 1], Point{16.0, 0.0}));
  for (size_t i = 0; i < fx.left_tops.size(); ++i) {
    const Point top = fx.net.vertices[fx.left_tops[i]];
    CHECK(std::abs(top.x - (i + 0.5)) <= 1e-12);  // unit spacing
    CHECK(top.y > i + 0.4);  // height tracks the offset from p...
    CHECK(top.y < i + 0.5);  // ...but stays below it (the arcs are bent)
  }
  CHECK(fx.shortcut.crossings.size() == 16);  // both sides of every spike

  const AugmentedNetwork aug = insert_segment(fx.net, fx.shortcut);
  const DistanceMatrix dm = compute_distances(aug.net);
  const LocusPoint mid = snap_to_locus(aug.net, Point{8.0, 0.0}, 1e-9);
  for (int a : fx.left_tops)
    CHECK(std::abs(vertex_point_distance(aug.net, dm, a, mid) - 8.0) <= 1e-9);
  for (int b : fx.right_tops)
    CHECK(std::abs(vertex_point_distance(aug.net, dm, b, mid) - 8.0) <= 1e-9);
  for (int a : fx.left_tops)
    for (int b : fx.right_tops) CHECK(std::abs(dm(a, b) - fx.span) <= 1e-9);
  CHECK(std::abs(continuous_diameter(aug.net, dm).value - fx.span) <= 1e-7);
}

TEST_CASE("spike fixture scales down to two spikes") {
  const SpikeFixture fx = gen_spike_fixture(2, 3.0);
  CHECK(fx.span == 3.0);
  CHECK(fx.left_tops.size() == 1);
  CHECK(fx.right_tops.size() == 1);
  CHECK(is_path(fx.net));
}

TEST_CASE("spike fixture rejects impossible shapes") {
  CHECK(code_of([] { gen_spike_fixture(3, 10.0); }) == ErrorCode::InfeasibleGeometry);
  CHECK(code_of([] { gen_spike_fixture(0, 10.0); }) == ErrorCode::InfeasibleGeometry);
  CHECK(code_of([] { gen_spike_fixture(8, 7.9); }) == ErrorCode::InfeasibleGeometry);
}

}  // TEST_SUITE
