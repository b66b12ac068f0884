// limroots: command-line front end.
//
// Exit status: 0 ok, 1 verification failed, 2 input or runtime error.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "limroots/arrangement.hpp"
#include "limroots/error.hpp"
#include "limroots/io.hpp"
#include "limroots/limits.hpp"
#include "limroots/manifest.hpp"
#include "limroots/svg.hpp"
#include "limroots/verify.hpp"

using namespace limroots;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error(ErrorKind::InvalidInput, "write to '" + path + "' failed");
}

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

void write_manifest(const std::string& out, const RunManifest& m) { write_file(manifest_path(out), m.to_json().dump(2) + "\n"); }

RunManifest start_manifest(const std::string& command, const std::string& graph_name, const CoxeterGraph& g) {
  RunManifest m;
  m.command = command;
  m.graph = graph_name;
  m.graph_hash = graph_hash(g);
  return m;
}

std::string matrix_text(const Matrix& m) {
  std::ostringstream os;
  os << std::setprecision(10);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << "  [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << std::setw(13) << m(i, j);
    os << "]\n";
  }
  return os.str();
}

std::string vector_text(const Vector& v) {
  std::ostringstream os;
  os << std::setprecision(12) << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

struct Common {
  std::string graph;
  std::string out;
  std::string core = "1..4";
  std::string conj = "0..4";
  int depth = 4;
  double dedup_eps = 1e-6;
  std::uint64_t seed = 1;
  int threads = 1;
};

int cmd_analyze(const Common& c) {
  const CoxeterGraph g = load_graph(c.graph);
  const GeometricSystem sys(g);
  const Signature& s = sys.signature();
  std::cout << "graph: " << c.graph << "\nrank: " << sys.rank() << "\nB =\n"
            << matrix_text(sys.form()) << "signature: (" << s.n_plus << "," << s.n_minus << "," << s.n_zero
            << ")\ntype: " << sys.type_name() << "\n";
  if (!c.out.empty()) {
    json report{{"graph", c.graph},
                {"graph_hash", graph_hash(g)},
                {"rank", sys.rank()},
                {"form", json::array()},
                {"signature", {s.n_plus, s.n_minus, s.n_zero}},
                {"type", sys.type_name()},
                {"tool_version", kToolVersion}};
    for (Eigen::Index i = 0; i < sys.form().rows(); ++i) {
      const Vector row = sys.form().row(i);
      report["form"].push_back(std::vector<double>(row.data(), row.data() + row.size()));
    }
    write_file(c.out, report.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_limit_roots(const Common& c, const std::string& kinds, std::size_t max_raw) {
  const auto t0 = Clock::now();
  const CoxeterGraph g = load_graph(c.graph);
  const GeometricSystem sys(g);
  const LengthRange core = parse_range(c.core);
  const LengthRange conj = parse_range(c.conj);
  if (kinds != "all" && kinds != "parabolic" && kinds != "hyperbolic") {
    throw Error(ErrorKind::InvalidInput, "--kinds must be all, parabolic or hyperbolic");
  }
  SampleOptions opts;
  opts.dedup_eps = c.dedup_eps;
  opts.threads = c.threads;
  opts.parabolic = kinds != "hyperbolic";
  opts.hyperbolic = kinds != "parabolic";
  opts.max_raw_points = max_raw;

  RunManifest m = start_manifest("limit-roots", c.graph, g);
  m.budgets = {{"core_lengths", c.core}, {"conj_lengths", c.conj}, {"kinds", kinds}, {"max_raw_points", max_raw}};
  m.tolerances = {{"dedup_eps", c.dedup_eps},
                  {"enumeration_grid", EnumerateOptions{}.grid},
                  {"hyperbolic_tol", opts.spectral.hyperbolic_tol},
                  {"residual_tol", opts.spectral.residual_tol}};
  SampleReport sr;
  try {
    const ElementStore store = enumerate(sys, std::max(core.hi, conj.hi));
    const PointSet set = sample_limit_roots(sys, store, core, conj, opts, &sr);
    std::ostringstream csv;
    write_points_csv(csv, set);
    m.summary = {{"points", set.size()},
                 {"parabolic_eig", set.count(PointKind::ParabolicEig)},
                 {"hyperbolic_eig", set.count(PointKind::HyperbolicEig)},
                 {"at_infinity", set.count_at_infinity()},
                 {"core_elements", sr.core_elements},
                 {"core_directions", sr.core_directions},
                 {"conjugators", sr.conjugators},
                 {"raw_points", sr.raw_points}};
    std::cout << set.size() << " points (parabolic-eig " << set.count(PointKind::ParabolicEig) << ", hyperbolic-eig "
              << set.count(PointKind::HyperbolicEig) << ") from " << sr.core_directions << " core directions x "
              << sr.conjugators << " conjugators, " << sr.raw_points << " before dedup\n";
    if (!c.out.empty()) {
      const std::string text = csv.str();
      write_file(c.out, text);
      m.add_output(c.out, text);
      m.wall_seconds = seconds_since(t0);
      write_manifest(c.out, m);
    } else {
      std::cout << csv.str();
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BudgetExceeded && !c.out.empty()) {
      m.status = std::string("aborted: ") + e.what();
      m.summary = {{"core_elements", sr.core_elements},
                   {"core_directions", sr.core_directions},
                   {"conjugators", sr.conjugators},
                   {"raw_points", sr.raw_points}};
      m.wall_seconds = seconds_since(t0);
      write_manifest(c.out, m);
      std::cerr << "partial manifest written to " << manifest_path(c.out) << "\n";
    }
    throw;
  }
  return kExitOk;
}

int cmd_plot(const Common& c, const std::string& points, bool weights, int conic_resolution, const std::string& title) {
  const auto t0 = Clock::now();
  const CoxeterGraph g = load_graph(c.graph);
  const GeometricSystem sys(g);
  if (sys.rank() != 3 && sys.rank() != 4) throw Error(ErrorKind::Unsupported, "plots exist for rank 3 and 4");
  if (c.out.empty()) throw Error(ErrorKind::InvalidInput, "plot needs --out");
  PlotScene scene;
  scene.rank = sys.rank();
  scene.title = title;
  scene.manifest_ref = manifest_path(c.out);
  if (sys.lorentzian()) scene.conic = light_conic(sys, conic_resolution);
  RunManifest m = start_manifest("plot", c.graph, g);
  m.budgets = {{"depth", c.depth}, {"conic_resolution", conic_resolution}};

  if (!points.empty()) {
    std::ifstream in(points);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot read '" + points + "'");
    int rank = 0;
    const auto records = read_points_csv(in, &rank);
    if (rank != sys.rank()) {
      throw Error(ErrorKind::InvalidInput, "points have rank " + std::to_string(rank) + " but the graph has rank " +
                                               std::to_string(sys.rank()));
    }
    for (const auto& r : records) {
      if (!r.at_infinity()) scene.points.emplace_back(r.coords, r.kind);
    }
    std::stringstream buf;
    in.clear();
    in.seekg(0);
    buf << in.rdbuf();
    m.budgets["points"] = points;
    m.budgets["points_sha256"] = sha256_hex(buf.str());
  }
  if (sys.rank() == 3 && c.depth > 0) {
    const auto roots = roots_by_depth(sys, c.depth);
    for (const auto& r : roots) {
      if (auto line = chart_line(sys.form(), r.vector)) scene.lines.push_back(*line);
    }
    if (sys.lorentzian()) {
      for (const auto& ci : codim2_spacelike(sys, roots)) {
        if (ci.kind == IntersectionKind::SpaceLike && ci.point && !ci.point->at_infinity) scene.dots.push_back(ci.point->coords);
      }
    }
  }
  if (weights && sys.nonsingular()) {
    for (const auto& w : fundamental_weights(sys)) {
      const ProjectivePoint p = to_chart(w.vector, sys.form());
      if (!p.at_infinity) scene.diamonds.push_back(p.coords);
    }
  }
  const std::string svg = render_svg(scene);
  write_file(c.out, svg);
  m.add_output(c.out, svg);
  m.summary = {{"points", scene.points.size()}, {"lines", scene.lines.size()}, {"dots", scene.dots.size()},
               {"diamonds", scene.diamonds.size()}};
  m.wall_seconds = seconds_since(t0);
  write_manifest(c.out, m);
  std::cout << "wrote " << c.out << " (" << scene.points.size() << " points, " << scene.lines.size() << " lines)\n";
  return kExitOk;
}

int cmd_word_limit(const Common& c, const std::string& prefix, const std::string& period, int horizon) {
  const CoxeterGraph g = load_graph(c.graph);
  const GeometricSystem sys(g);
  PeriodicWord pw{parse_word(prefix, sys.rank()), parse_word(period, sys.rank())};
  const WordLimit wl = word_limit_root(sys, pw, horizon);
  const SpectralClass& sc = wl.period_class;
  std::cout << std::setprecision(12) << "limit root: " << vector_text(wl.point.coords)
            << (wl.point.at_infinity ? " (at infinity)" : "") << "\nB(x,x): " << wl.point.bnorm
            << "\nperiod: " << format_word(pw.period, sys.rank()) << " is " << to_string(sc.kind);
  if (sc.dominant) std::cout << ", lambda = " << sc.dominant->lambda;
  if (sc.parabolic) std::cout << ", epsilon = " << sc.parabolic->epsilon;
  std::cout << "\nprefix-orbit residual at horizon " << horizon << ": " << wl.orbit_residual << "\n";
  if (!c.out.empty()) {
    json j{{"graph", c.graph},
           {"prefix", format_word(pw.prefix, sys.rank())},
           {"period", format_word(pw.period, sys.rank())},
           {"point", std::vector<double>(wl.point.coords.data(), wl.point.coords.data() + wl.point.coords.size())},
           {"at_infinity", wl.point.at_infinity},
           {"bnorm", wl.point.bnorm},
           {"period_kind", to_string(sc.kind)},
           {"orbit_residual", wl.orbit_residual},
           {"horizon", horizon}};
    if (sc.dominant) j["lambda"] = sc.dominant->lambda;
    write_file(c.out, j.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_verify(const Common& c, const std::string& suite, const std::string& word) {
  const CoxeterGraph g = load_graph(c.graph);
  const GeometricSystem sys(g);
  VerifyBudgets b;
  b.core = parse_range(c.core);
  b.conj = parse_range(c.conj);
  b.depth = c.depth;
  b.seed = c.seed;
  b.dedup_eps = c.dedup_eps;
  b.threads = c.threads;
  if (!word.empty()) {
    b.word = parse_word(word, sys.rank());
  } else if (!sys.lorentzian() && sys.rank() == 5) {
    b.word = {0, 1, 3, 4};
  }
  const CheckReport rep = run_suite(suite, sys, b);
  json j = rep.to_json();
  j["graph"] = c.graph;
  std::cout << j.dump(2) << "\n";
  if (!c.out.empty()) write_file(c.out, j.dump(2) + "\n");
  return rep.pass ? kExitOk : kExitFailed;
}

int cmd_intersections(const Common& c, bool all) {
  const auto t0 = Clock::now();
  const CoxeterGraph g = load_graph(c.graph);
  const GeometricSystem sys(g);
  const auto roots = roots_by_depth(sys, c.depth);
  const auto cis = codim2_spacelike(sys, roots, all);
  std::ostringstream csv;
  write_intersections_csv(csv, roots, cis, sys.rank());
  std::size_t space = 0, light = 0;
  for (const auto& ci : cis) {
    space += ci.kind == IntersectionKind::SpaceLike;
    light += ci.kind == IntersectionKind::LightLike;
  }
  std::cerr << roots.size() << " roots to depth " << c.depth << ", " << space << " space-like and " << light
            << " light-like intersections\n";
  if (c.out.empty()) {
    std::cout << csv.str();
    return kExitOk;
  }
  write_file(c.out, csv.str());
  RunManifest m = start_manifest("intersections", c.graph, g);
  m.budgets = {{"depth", c.depth}, {"all", all}};
  m.tolerances = {{"pairing_tol", kPairingTol}};
  m.summary = {{"roots", roots.size()}, {"space_like", space}, {"light_like", light}, {"rows", cis.size()}};
  m.add_output(c.out, csv.str());
  m.wall_seconds = seconds_since(t0);
  write_manifest(c.out, m);
  return kExitOk;
}

int cmd_weights(const Common& c) {
  const CoxeterGraph g = load_graph(c.graph);
  const GeometricSystem sys(g);
  json j = weights_json(sys, fundamental_weights(sys));
  j["tool_version"] = kToolVersion;
  const std::string text = j.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    write_file(c.out, text);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limit roots of Lorentzian Coxeter systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Common c;
  auto graph_opt = [&](CLI::App* sub) {
    sub->add_option("--graph", c.graph, "built-in name (a2, fig1a, fig1b, fig8, universal3:<c>) or JSON file")->required();
  };

  auto* analyze = app.add_subcommand("analyze", "print B, its signature and the type");
  graph_opt(analyze);
  analyze->add_option("--out", c.out, "also write a JSON report");

  std::string kinds = "all";
  std::size_t max_raw = SampleOptions{}.max_raw_points;
  auto* limit = app.add_subcommand("limit-roots", "sample limit roots by conjugating eigendirections");
  graph_opt(limit);
  limit->add_option("--core-lengths", c.core, "lengths of the elements whose eigendirections are used")->capture_default_str();
  limit->add_option("--conj-lengths", c.conj, "lengths of the conjugators")->capture_default_str();
  limit->add_option("--dedup-eps", c.dedup_eps, "merge radius in the affine chart")->capture_default_str();
  limit->add_option("--kinds", kinds, "all, parabolic or hyperbolic")->capture_default_str();
  limit->add_option("--threads", c.threads)->capture_default_str();
  limit->add_option("--max-raw-points", max_raw, "abort before work beyond this many images")->capture_default_str();
  limit->add_option("--out", c.out, "CSV path; the manifest goes to <out>.manifest.json");

  std::string points, title;
  bool weights = false;
  int conic_resolution = 720;
  auto* plot = app.add_subcommand("plot", "render the affine chart as SVG");
  graph_opt(plot);
  plot->add_option("--points", points, "points CSV from limit-roots");
  plot->add_option("--depth", c.depth, "draw reflecting lines of roots up to this depth (0 for none)")->capture_default_str();
  plot->add_flag("--weights", weights, "mark fundamental weights with diamonds");
  plot->add_option("--conic-resolution", conic_resolution)->capture_default_str();
  plot->add_option("--title", title);
  plot->add_option("--out", c.out, "SVG path")->required();

  std::string prefix, period;
  int horizon = kReducedHorizon;
  auto* word_limit = app.add_subcommand("word-limit", "limit root of prefix . period . period ...");
  graph_opt(word_limit);
  word_limit->add_option("--prefix", prefix);
  word_limit->add_option("--period", period)->required();
  word_limit->add_option("--horizon", horizon)->capture_default_str();
  word_limit->add_option("--out", c.out, "also write a JSON report");

  std::string suite, word;
  auto* verify = app.add_subcommand("verify", "run a named check suite");
  graph_opt(verify);
  verify->add_option("--suite", suite)->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--core-lengths", c.core)->capture_default_str();
  verify->add_option("--conj-lengths", c.conj)->capture_default_str();
  verify->add_option("--depth", c.depth)->capture_default_str();
  verify->add_option("--dedup-eps", c.dedup_eps)->capture_default_str();
  verify->add_option("--seed", c.seed)->capture_default_str();
  verify->add_option("--threads", c.threads)->capture_default_str();
  verify->add_option("--word", word, "element for the spectra suite on non-Lorentzian graphs");
  verify->add_option("--out", c.out, "also write the JSON report");

  bool all = false;
  auto* inter = app.add_subcommand("intersections", "codimension-2 intersections of reflecting hyperplanes");
  graph_opt(inter);
  inter->add_option("--depth", c.depth)->capture_default_str();
  inter->add_flag("--all", all, "include pairs that are neither space-like nor light-like");
  inter->add_option("--out", c.out, "CSV path");

  auto* wts = app.add_subcommand("weights", "fundamental weights as JSON");
  graph_opt(wts);
  wts->add_option("--out", c.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze) return cmd_analyze(c);
    if (*limit) return cmd_limit_roots(c, kinds, max_raw);
    if (*plot) return cmd_plot(c, points, weights, conic_resolution, title);
    if (*word_limit) return cmd_word_limit(c, prefix, period, horizon);
    if (*verify) return cmd_verify(c, suite, word);
    if (*inter) return cmd_intersections(c, all);
    if (*wts) return cmd_weights(c);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
