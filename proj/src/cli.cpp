#include "netshort/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netshort/approx.hpp"
#include "netshort/augment.hpp"
#include "netshort/distance.hpp"
#include "netshort/error.hpp"
#include "netshort/network.hpp"
#include "netshort/oracle.hpp"
#include "netshort/path_fast.hpp"
#include "netshort/path_simple.hpp"

namespace netshort {

namespace {

using ordered_json = nlohmann::ordered_json;

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::EmptyInput:
    case ErrorCode::BadIndex:
    case ErrorCode::NotPlanar:
    case ErrorCode::Disconnected:
    case ErrorCode::DegenerateEdge:
      return 2;
    case ErrorCode::IoError:
      return 5;
    case ErrorCode::NotAPath:
    case ErrorCode::MethodMismatch:
    case ErrorCode::BadEpsilon:
    case ErrorCode::BudgetExceeded:
    case ErrorCode::NotSimple:
      return 4;
    default:
      return 3;
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json locus_json(const Network& net, const LocusPoint& lp) {
  const Point p = locate(net, lp);
  return ordered_json{{"x", p.x}, {"y", p.y}, {"edge", lp.edge}, {"t", lp.t}};
}

ordered_json candidate_json(const Network& net, const Candidate& c) {
  return ordered_json{{"a", locus_json(net, c.a)},
                      {"b", locus_json(net, c.b)},
                      {"length", length(c.seg)},
                      {"crossings", c.crossings.size()}};
}

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(clock::now() - t0_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point t0_ = clock::now();
};

void emit(std::ostream& out, const ordered_json& j, bool quiet) {
  if (quiet)
    out << j.at("diameter").dump() << "\n";
  else
    out << j.dump(2) << "\n";
}

Candidate parse_segment(const Network& net, const std::vector<double>& xy) {
  const LocusPoint a = snap_to_locus(net, {xy[0], xy[1]}, 1e-6);
  const LocusPoint b = snap_to_locus(net, {xy[2], xy[3]}, 1e-6);
  return make_candidate(net, a, b);
}

int cmd_diam(const std::string& input, bool quiet, std::ostream& out) {
  Timer timer;
  const Network net = read_network_file(input);
  const DiametralPair dp = continuous_diameter(net);
  ordered_json j{{"method", "diam"},
                 {"base", dp.value},
                 {"diameter", dp.value},
                 {"candidate", nullptr},
                 {"kind", kind_name(dp.kind)},
                 {"a", locus_json(net, dp.a)},
                 {"b", locus_json(net, dp.b)},
                 {"timing_ms", timer.ms()}};
  emit(out, j, quiet);
  return 0;
}

int cmd_augment(const std::string& input, const std::vector<double>& seg, bool path_fast,
                bool quiet, std::ostream& out) {
  Timer timer;
  const Network net = read_network_file(input);
  const double base = continuous_diameter(net).value;
  const Candidate c = parse_segment(net, seg);
  const bool fast = path_fast && is_path(net);
  const double diam = fast ? path_diameter_with_shortcut(net, c) : diameter_with_segment(net, c);
  ordered_json j{{"method", "augment"},
                 {"algorithm", fast ? "path-fast" : "quadratic"},
                 {"base", base},
                 {"diameter", diam},
                 {"candidate", candidate_json(net, c)},
                 {"timing_ms", timer.ms()}};
  emit(out, j, quiet);
  return 0;
}

int cmd_shortcut(const std::string& input, const std::string& method, double epsilon,
                 bool have_epsilon, double angle, long long budget, int threads,
                 unsigned seed, bool check_oracle, bool quiet, std::ostream& out) {
  Timer timer;
  const Network net = read_network_file(input);
  ordered_json j{{"method", method}};
  const Candidate* best = nullptr;
  Candidate found;

  if (method == "approx") {
    ApproxOptions opt;
    if (have_epsilon) opt.epsilon = epsilon;
    opt.budget = budget;
    opt.threads = threads;
    const ApproxResult r = approx_optimal_shortcut(net, opt);
    j["base"] = r.base;
    j["diameter"] = r.diameter;
    if (r.found) {
      found = r.candidate;
      best = &found;
    }
    j["candidate"] = best ? candidate_json(net, *best) : ordered_json(nullptr);
    j["guarantee"] = r.guarantee;
    j["extensions"] = r.stats.extensions;
    j["network_probes"] = r.stats.network_probes;
  } else if (method == "path-fixed") {
    const FixedOrientationResult r = optimal_fixed_orientation_shortcut(net, angle);
    j["base"] = r.base;
    j["diameter"] = r.diameter;
    if (r.found) {
      found = r.candidate;
      best = &found;
    }
    j["candidate"] = best ? candidate_json(net, *best) : ordered_json(nullptr);
    j["angle"] = angle;
  } else if (method == "path-simple") {
    const SimpleShortcutResult r = optimal_simple_shortcut(net);
    j["base"] = r.base;
    j["diameter"] = r.diameter;
    if (r.exists) {
      found = *r.candidate;
      best = &found;
    }
    j["candidate"] = best ? candidate_json(net, *best) : ordered_json(nullptr);
    j["exists"] = r.exists;
  } else {  // oracle
    OracleConfig cfg;
    cfg.seed = seed;
    const GridSearchResult r = grid_shortcut_search(net, cfg, /*simple_only=*/false);
    j["base"] = r.base;
    j["diameter"] = r.found ? r.diameter : r.base;
    if (r.found && r.diameter < r.base - 1e-9) {
      found = r.best;
      best = &found;
    }
    j["candidate"] = best ? candidate_json(net, *best) : ordered_json(nullptr);
    j["spacing"] = r.spacing;
  }

  if (check_oracle) {
    OracleConfig cfg;
    cfg.seed = seed;
    const GridSearchResult r = grid_shortcut_search(net, cfg, method == "path-simple");
    j["oracle"] = ordered_json{{"base", r.base},
                               {"diameter", r.found ? r.diameter : r.base},
                               {"spacing", r.spacing}};
  }
  j["timing_ms"] = timer.ms();
  emit(out, j, quiet);
  return 0;
}

int cmd_render(const std::string& input, const std::vector<double>& seg,
               const std::string& out_path) {
  const Network net = read_network_file(input);
  const bool have_seg = !seg.empty();
  Candidate cand;
  DiametralPair dp;
  const Network* shown = &net;
  Network aug_store;
  if (have_seg) {
    cand = parse_segment(net, seg);
    aug_store = insert_segment(net, cand).net;
    shown = &aug_store;
    dp = continuous_diameter(aug_store);
  } else {
    dp = continuous_diameter(net);
  }

  double xmin = net.vertices[0].x, xmax = xmin, ymin = net.vertices[0].y, ymax = ymin;
  for (const Point& p : net.vertices) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
  const double margin = 0.05 * span;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
      << fmt(xmin - margin) << " " << fmt(ymin - margin) << " "
      << fmt(xmax - xmin + 2 * margin) << " " << fmt(ymax - ymin + 2 * margin) << "\">\n";
  const double w = 0.01 * span;
  for (const auto& e : net.edges) {
    const Point a = net.vertices[e[0]], b = net.vertices[e[1]];
    svg << "  <line x1=\"" << fmt(a.x) << "\" y1=\"" << fmt(a.y) << "\" x2=\"" << fmt(b.x)
        << "\" y2=\"" << fmt(b.y) << "\" stroke=\"black\" stroke-width=\"" << fmt(w)
        << "\"/>\n";
  }
  if (have_seg) {
    svg << "  <line x1=\"" << fmt(cand.seg.a.x) << "\" y1=\"" << fmt(cand.seg.a.y)
        << "\" x2=\"" << fmt(cand.seg.b.x) << "\" y2=\"" << fmt(cand.seg.b.y)
        << "\" stroke=\"blue\" stroke-width=\"" << fmt(w) << "\" stroke-dasharray=\""
        << fmt(3 * w) << " " << fmt(2 * w) << "\"/>\n";
  }
  for (const LocusPoint& lp : {dp.a, dp.b}) {
    const Point p = locate(*shown, lp);
    svg << "  <circle cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(p.y) << "\" r=\"" << fmt(2 * w)
        << "\" fill=\"red\"/>\n";
  }
  svg << "</svg>\n";

  std::ofstream f(out_path);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + out_path + " for writing");
  f << svg.str();
  if (!f.good()) throw Error(ErrorCode::IoError, "failed writing " + out_path);
  return 0;
}

int cmd_fixture(int spikes, double span, const std::string& out_path, std::ostream& out) {
  const SpikeFixture fx = gen_spike_fixture(spikes, span);
  std::map<std::string, std::string> meta;
  meta["kind"] = "spike-fixture";
  meta["spikes"] = std::to_string(spikes);
  meta["span"] = fmt(fx.span);
  const Point a = fx.shortcut.seg.a, b = fx.shortcut.seg.b;
  meta["segment"] = fmt(a.x) + "," + fmt(a.y) + "," + fmt(b.x) + "," + fmt(b.y);
  auto join = [](const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  meta["left_tops"] = join(fx.left_tops);
  meta["right_tops"] = join(fx.right_tops);
  const std::string text = write_network_json(fx.net, meta);
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw Error(ErrorCode::IoError, "cannot open " + out_path + " for writing");
    f << text;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continuous-diameter tools for plane Euclidean networks"};
  app.require_subcommand(1);

  std::string input, method = "approx", out_path;
  std::vector<double> seg;
  bool quiet = false, path_fast = false, check_oracle = false;
  double epsilon = 0.0, angle = 0.0, span = 16.0;
  long long budget = -1;
  int threads = 1, spikes = 4;
  unsigned seed = 0;

  auto* diam = app.add_subcommand("diam", "continuous diameter of a network");
  diam->add_option("input", input, "network JSON file")->required();
  diam->add_flag("--quiet", quiet, "print only the diameter");

  auto* augment = app.add_subcommand("augment", "diameter after inserting one segment");
  augment->add_option("input", input, "network JSON file")->required();
  augment->add_option("--segment", seg, "segment x1,y1,x2,y2 with endpoints on the locus")
      ->delimiter(',')
      ->expected(4)
      ->required();
  augment->add_flag("--path-fast", path_fast, "use the sweep algorithm on path inputs");
  augment->add_flag("--quiet", quiet, "print only the diameter");

  auto* shortcut = app.add_subcommand("shortcut", "search for a diameter-reducing segment");
  shortcut->add_option("input", input, "network JSON file")->required();
  shortcut->add_option("--method", method, "search algorithm")
      ->check(CLI::IsMember({"approx", "path-fixed", "path-simple", "oracle"}))
      ->required();
  auto* eps_opt = shortcut->add_option("--epsilon", epsilon, "slack for the approx method");
  shortcut->add_option("--angle", angle, "segment orientation in degrees (path-fixed)");
  shortcut->add_option("--budget", budget, "extension evaluation budget (approx)");
  shortcut->add_option("--threads", threads, "worker cap")->envname("NETSHORT_THREADS");
  shortcut->add_option("--seed", seed, "oracle sampling seed");
  shortcut->add_flag("--check-oracle", check_oracle, "append a grid-search cross-check");
  shortcut->add_flag("--quiet", quiet, "print only the diameter");

  auto* render = app.add_subcommand("render", "draw the network as SVG");
  render->add_option("input", input, "network JSON file")->required();
  render->add_option("--segment", seg, "segment x1,y1,x2,y2 to overlay")
      ->delimiter(',')
      ->expected(4);
  render->add_option("--out", out_path, "output SVG path")->required();

  auto* fixture = app.add_subcommand("fixture", "emit the spike construction");
  fixture->add_option("--spikes", spikes, "number of spikes")->required();
  fixture->add_option("--span", span, "length of the chord pq")->required();
  fixture->add_option("--out", out_path, "output file (default stdout)");

  std::vector<const char*> argv;
  argv.push_back("netshort");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (diam->parsed()) return cmd_diam(input, quiet, out);
    if (augment->parsed()) return cmd_augment(input, seg, path_fast, quiet, out);
    if (shortcut->parsed())
      return cmd_shortcut(input, method, epsilon, eps_opt->count() > 0, angle, budget,
                          threads, seed, check_oracle, quiet, out);
    if (render->parsed()) return cmd_render(input, seg, out_path);
    if (fixture->parsed()) return cmd_fixture(spikes, span, out_path, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace netshort
