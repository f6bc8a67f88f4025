#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "helpers.hpp"
#include "netshort/cli.hpp"
#include "netshort/network.hpp"

using namespace netshort;
using namespace netshort::testing;
using ordered_json = nlohmann::ordered_json;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string write_fixture(const std::string& name, const Network& net) {
  write_network_file(name, net);
  return name;
}

std::string write_text(const std::string& name, const std::string& text) {
  std::ofstream f(name);
  f << text;
  return name;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("diam reports the square diameter with its witness pair") {
  const std::string file = write_fixture("tmp_cli_square.json", square_net());
  const CliRun r = run({"diam", file});
  REQUIRE(r.code == 0);

  const ordered_json j = ordered_json::parse(r.out);
  const std::vector<std::string> expect_keys{"method",    "base", "diameter", "candidate",
                                             "kind",      "a",    "b",        "timing_ms"};
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  CHECK(keys == expect_keys);

  CHECK(j["method"] == "diam");
  CHECK(j["base"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(j["diameter"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(j["candidate"].is_null());
  CHECK(j["kind"] == "vertex-vertex");
  CHECK(j["a"]["x"].get<double>() == doctest::Approx(0.0));
  CHECK(j["a"]["y"].get<double>() == doctest::Approx(0.0));
  CHECK(j["b"]["x"].get<double>() == doctest::Approx(1.0));
  CHECK(j["b"]["y"].get<double>() == doctest::Approx(1.0));
  CHECK(j["timing_ms"].get<double>() >= 0.0);
}

TEST_CASE("quiet mode prints exactly the diameter line") {
  const std::string file = write_fixture("tmp_cli_square.json", square_net());
  const CliRun r = run({"diam", file, "--quiet"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "2.0\n");
}

TEST_CASE("augment evaluates a given segment") {
  const std::string file = write_fixture("tmp_cli_square.json", square_net());
  const CliRun r = run({"augment", file, "--segment", "0,0,1,1"});
  REQUIRE(r.code == 0);

  const ordered_json j = ordered_json::parse(r.out);
  CHECK(j["method"] == "augment");
  CHECK(j["algorithm"] == "quadratic");
  CHECK(j["base"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(j["diameter"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(j["candidate"]["length"].get<double>() ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(j["candidate"]["crossings"].get<int>() == 0);
  CHECK(j["candidate"]["a"]["edge"].get<int>() == 0);
  CHECK(j["candidate"]["b"]["edge"].get<int>() == 1);
}

TEST_CASE("augment on a path agrees between sweep and quadratic") {
  const std::string file = write_fixture("tmp_cli_vpath.json", vpath_net());
  const std::string seg = "-0.5,0.5,0.5,0.5";
  const CliRun fast = run({"augment", file, "--segment", seg, "--path-fast"});
  const CliRun slow = run({"augment", file, "--segment", seg});
  REQUIRE(fast.code == 0);
  REQUIRE(slow.code == 0);

  const ordered_json jf = ordered_json::parse(fast.out);
  const ordered_json js = ordered_json::parse(slow.out);
  CHECK(jf["algorithm"] == "path-fast");
  CHECK(js["algorithm"] == "quadratic");
  const double expect = 1.0 + std::sqrt(2.0);
  CHECK(std::abs(jf["diameter"].get<double>() - expect) <= 1e-9);
  CHECK(std::abs(js["diameter"].get<double>() - expect) <= 1e-9);
}

TEST_CASE("shortcut method oracle brackets the V optimum") {
  const std::string file = write_fixture("tmp_cli_vpath.json", vpath_net());
  const CliRun r = run({"shortcut", file, "--method", "oracle", "--seed", "0"});
  REQUIRE(r.code == 0);

  const ordered_json j = ordered_json::parse(r.out);
  const double s2 = std::sqrt(2.0);
  const double opt = (8.0 * s2 + 4.0) / 7.0;
  CHECK(j["method"] == "oracle");
  CHECK(std::abs(j["base"].get<double>() - 2.0 * s2) <= 1e-9);
  const double diam = j["diameter"].get<double>();
  const double spacing = j["spacing"].get<double>();
  CHECK(std::abs(spacing - s2 / 49.0) <= 1e-12);
  CHECK(diam >= opt - 1e-9);
  CHECK(diam <= opt + 2.0 * spacing + 1e-9);
  CHECK(!j["candidate"].is_null());
}

TEST_CASE("shortcut method path-simple reports attainment") {
  const std::string vfile = write_fixture("tmp_cli_vpath.json", vpath_net());
  const CliRun rv = run({"shortcut", vfile, "--method", "path-simple"});
  REQUIRE(rv.code == 0);
  const ordered_json jv = ordered_json::parse(rv.out);
  const double s2 = std::sqrt(2.0);
  CHECK(jv["exists"].get<bool>());
  CHECK(!jv["candidate"].is_null());
  CHECK(std::abs(jv["diameter"].get<double>() - (8.0 * s2 + 4.0) / 7.0) <= 1e-9);

  const std::string wfile = write_fixture("tmp_cli_blockedw.json", blocked_w_path());
  const CliRun rw = run({"shortcut", wfile, "--method", "path-simple"});
  REQUIRE(rw.code == 0);
  const ordered_json jw = ordered_json::parse(rw.out);
  const double t = 2.0 * (std::sqrt(5.0) + std::sqrt(2.44));
  const double z = (t - 0.8 * std::sqrt(5.0) - 3.2) / 2.0;
  CHECK(!jw["exists"].get<bool>());
  CHECK(jw["candidate"].is_null());
  CHECK(std::abs(jw["diameter"].get<double>() - (3.2 + 0.4 * std::sqrt(5.0) + z)) <= 1e-7);
}

TEST_CASE("shortcut method path-fixed takes the angle in degrees") {
  const std::string file = write_fixture("tmp_cli_vpath.json", vpath_net());
  const CliRun r = run({"shortcut", file, "--method", "path-fixed", "--angle", "0"});
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  const double s2 = std::sqrt(2.0);
  CHECK(j["angle"].get<double>() == 0.0);
  CHECK(std::abs(j["diameter"].get<double>() - (8.0 * s2 + 4.0) / 7.0) <= 1e-9);
  CHECK(!j["candidate"].is_null());

  const CliRun vertical = run({"shortcut", file, "--method", "path-fixed", "--angle", "90"});
  REQUIRE(vertical.code == 0);
  const ordered_json jv = ordered_json::parse(vertical.out);
  CHECK(jv["candidate"].is_null());
  CHECK(std::abs(jv["diameter"].get<double>() - 2.0 * s2) <= 1e-9);
}

TEST_CASE("shortcut method approx carries its guarantee") {
  const std::string file = write_fixture("tmp_cli_vpath.json", vpath_net());
  const CliRun r = run({"shortcut", file, "--method", "approx"});
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  const double s2 = std::sqrt(2.0);
  CHECK(std::abs(j["diameter"].get<double>() - (1.0 + s2)) <= 1e-9);
  CHECK(std::abs(j["guarantee"].get<double>() - 4.0 * s2) <= 1e-12);
  CHECK(j["extensions"].get<long long>() >= 1);
  CHECK(j["network_probes"].get<long long>() >= 1);
  CHECK(!j["candidate"].is_null());
}

TEST_CASE("check-oracle appends a consistent grid cross-check") {
  const std::string file = write_fixture("tmp_cli_vpath.json", vpath_net());
  const CliRun r = run({"shortcut", file, "--method", "path-simple", "--check-oracle"});
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  REQUIRE(j.contains("oracle"));
  const double diam = j["diameter"].get<double>();
  const double odiam = j["oracle"]["diameter"].get<double>();
  const double spacing = j["oracle"]["spacing"].get<double>();
  CHECK(odiam >= diam - 1e-9);  // the grid restricted to simple chords cannot win
  CHECK(odiam <= diam + 2.0 * spacing + 1e-9);
}

TEST_CASE("fixture output round-trips byte for byte") {
  const CliRun r = run({"fixture", "--spikes", "4", "--span", "9"});
  REQUIRE(r.code == 0);

  const ordered_json j = ordered_json::parse(r.out);
  CHECK(j.contains("vertices"));
  CHECK(j.contains("edges"));
  CHECK(j["meta"]["kind"] == "spike-fixture");
  CHECK(j["meta"]["spikes"] == "4");
  CHECK(j["meta"]["left_tops"] == "3,7");
  CHECK(j.dump(2) + "\n" == r.out);

  const Network net = read_network_json(r.out);
  CHECK(is_path(net));

  const CliRun to_file = run({"fixture", "--spikes", "4", "--span", "9", "--out",
                              "tmp_cli_fixture.json"});
  REQUIRE(to_file.code == 0);
  std::ifstream f("tmp_cli_fixture.json");
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == r.out);
}

TEST_CASE("render writes an SVG with one line per edge") {
  const std::string file = write_fixture("tmp_cli_square.json", square_net());
  const CliRun r = run({"render", file, "--out", "tmp_cli_render.svg"});
  REQUIRE(r.code == 0);

  std::ifstream f("tmp_cli_render.svg");
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string svg = ss.str();
  CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"", 0) == 0);
  CHECK(svg.find("</svg>\n") != std::string::npos);

  auto count = [&](const std::string& needle) {
    size_t n = 0, pos = 0;
    while ((pos = svg.find(needle, pos)) != std::string::npos) {
      ++n;
      pos += needle.size();
    }
    return n;
  };
  CHECK(count("<line") == 4);
  CHECK(count("<circle") == 2);
  CHECK(svg.find("stroke-dasharray") == std::string::npos);

  const CliRun seg = run({"render", file, "--segment", "0,0,1,1", "--out",
                          "tmp_cli_render_seg.svg"});
  REQUIRE(seg.code == 0);
  std::ifstream f2("tmp_cli_render_seg.svg");
  std::stringstream ss2;
  ss2 << f2.rdbuf();
  const std::string svg2 = ss2.str();
  CHECK(svg2.find("stroke-dasharray") != std::string::npos);
}

TEST_CASE("threads can come from the environment") {
  const std::string file = write_fixture("tmp_cli_vpath.json", vpath_net());
  setenv("NETSHORT_THREADS", "2", 1);
  const CliRun r = run({"shortcut", file, "--method", "approx"});
  unsetenv("NETSHORT_THREADS");
  REQUIRE(r.code == 0);
  const ordered_json j = ordered_json::parse(r.out);
  CHECK(std::abs(j["diameter"].get<double>() - (1.0 + std::sqrt(2.0))) <= 1e-9);
}

TEST_CASE("help succeeds and argument mistakes exit with 2") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"shortcut", "tmp_cli_vpath.json"}).code == 2);  // --method required
  CHECK(run({"shortcut", "tmp_cli_vpath.json", "--method", "bogus"}).code == 2);
  CHECK(run({"augment", "tmp_cli_square.json", "--segment", "0,0"}).code == 2);
}

TEST_CASE("input problems map to the documented exit codes") {
  write_fixture("tmp_cli_square.json", square_net());
  write_fixture("tmp_cli_vpath.json", vpath_net());

  CHECK(run({"diam", "tmp_cli_missing.json"}).code == 5);
  CHECK(run({"diam", write_text("tmp_cli_bad.json", "not json")}).code == 2);

  const std::string crossing = write_text(
      "tmp_cli_crossing.json",
      R"({"vertices": [[0,0],[1,1],[1,0],[0,1]], "edges": [[0,1],[2,3]]})");
  CHECK(run({"diam", crossing}).code == 2);

  const std::string split = write_text(
      "tmp_cli_split.json",
      R"({"vertices": [[0,0],[1,0],[3,0],[4,0]], "edges": [[0,1],[2,3]]})");
  CHECK(run({"diam", split}).code == 2);

  // geometric precondition: segment endpoint off the locus
  const CliRun off = run({"augment", "tmp_cli_square.json", "--segment", "0.5,0.5,1,1"});
  CHECK(off.code == 3);
  CHECK(off.err.find("error:") == 0);

  CHECK(run({"fixture", "--spikes", "3", "--span", "10"}).code == 3);

  // method mismatches
  CHECK(run({"shortcut", "tmp_cli_square.json", "--method", "path-simple"}).code == 4);
  CHECK(run({"shortcut", "tmp_cli_vpath.json", "--method", "approx", "--budget", "0"}).code ==
        4);
  CHECK(run({"shortcut", "tmp_cli_vpath.json", "--method", "approx", "--epsilon", "5"}).code ==
        4);

  CHECK(run({"render", "tmp_cli_square.json", "--out",
             "/nonexistent_dir_zz/out.svg"}).code == 5);
}

}  // TEST_SUITE
