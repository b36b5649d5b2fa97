// egr: command-line front end. Every command writes one JSON report (schema
// in json_io.hpp) to stdout or --out. Exit status: 0 clean, 1 a witness was
// found where none was expected, 2 usage or input error.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "egr/colorings.hpp"
#include "egr/json_io.hpp"
#include "egr/patterns.hpp"
#include "egr/propagate.hpp"
#include "egr/q5_lemma.hpp"
#include "egr/sampling.hpp"
#include "egr/svg.hpp"
#include "egr/triples.hpp"

using namespace egr;

namespace {

constexpr int kExitClean = 0;
constexpr int kExitWitness = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::uint64_t seed = 0;
  double tol_abs = Tolerance{}.abs_eps;
  double tol_rel = Tolerance{}.rel_eps;
  std::string out;

  Tolerance tol() const { return {tol_abs, tol_rel}; }
  json echo() const { return {{"seed", seed}, {"tol_abs", tol_abs}, {"tol_rel", tol_rel}, {"out", out}}; }
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// A file path, or inline JSON when the argument starts with '{' or '['.
json load_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '['))
    return parse_json_text(arg, "<argument>");
  return load_json_file(arg);
}

void emit(const Globals& g, const json& report) {
  const std::string text = report.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw InputError(g.out + ": cannot write");
  f << text;
}

json vec_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

std::vector<double> parse_list(const std::string& text, std::size_t expected, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError(what + ": bad number \"" + item + "\"");
    }
  }
  if (expected && out.size() != expected)
    throw InputError(what + ": expected " + std::to_string(expected) + " comma-separated numbers");
  return out;
}

// ---- invariants ----------------------------------------------------------

struct InvariantsArgs {
  std::string config;
  bool heights = false;
  int subspace_dim = 0;
  int restarts = SearchOptions{}.restarts;
};

int cmd_invariants(const Globals& g, const InvariantsArgs& a) {
  const auto t0 = Clock::now();
  const Configuration c = configuration_from_json(load_arg(a.config), g.tol());
  const SearchOptions search{a.restarts, g.seed};

  json r;
  r["points"] = c.size();
  r["dim"] = c.dim();
  r["diameter"] = diameter(c);
  r["box_width"] = to_json(box_width(c, search));
  const Ball ball = min_enclosing_ball(c);
  r["circumradius"] = {{"value", ball.radius}, {"center", vec_json(ball.center)}, {"support", ball.support}};
  r["affine_dimension"] = affine_dimension(c, g.tol());
  if (c.size() >= 2) {
    const auto sphere = is_spherical(c, g.tol());
    r["spherical"] = sphere ? json{{"value", true}, {"center", to_json(sphere->center)}, {"radius", sphere->radius}}
                            : json{{"value", false}};
  }
  if (a.heights) r["heights"] = simplex_heights(c, g.tol());
  if (a.subspace_dim > 0) r["projection_diameter"] = to_json(projection_diameter(c, a.subspace_dim, search));

  json cfg = g.echo();
  cfg["config"] = a.config;
  cfg["heights"] = a.heights;
  cfg["subspace_dim"] = a.subspace_dim;
  cfg["restarts"] = a.restarts;
  emit(g, make_report("invariants", cfg, r, ms_since(t0)));
  return kExitClean;
}

// ---- render --------------------------------------------------------------

struct RenderArgs {
  std::string rule;
  std::string window = "-3,3,-3,3";
  double ppu = RenderOptions{}.pixels_per_unit;
  std::vector<std::string> palette;
  std::string slice_tail;
  std::vector<std::string> overlays;
  std::string report;
};

std::vector<std::vector<Point>> load_overlays(const std::vector<std::string>& args) {
  std::vector<std::vector<Point>> out;
  for (const auto& arg : args) {
    const json j = load_arg(arg);
    // A find report: one polygon per match, in needle order.
    if (j.contains("result") && j["result"].contains("matches")) {
      for (const auto& m : j["result"]["matches"]) {
        std::vector<Point> poly;
        for (const auto& p : m["points"]) poly.emplace_back(p.get<std::vector<double>>());
        out.push_back(std::move(poly));
      }
      continue;
    }
    // A check-coloring report with a witness.
    if (j.contains("result") && j["result"].contains("witness") && !j["result"]["witness"].is_null()) {
      std::vector<Point> poly;
      for (const auto& p : j["result"]["witness"]["points"]) poly.emplace_back(p.get<std::vector<double>>());
      out.push_back(std::move(poly));
      continue;
    }
    out.push_back(configuration_from_json(j).points());
  }
  return out;
}

int cmd_render(const Globals& g, const RenderArgs& a) {
  const auto t0 = Clock::now();
  if (g.out.empty()) throw InputError("render: --out FILE.svg is required");
  const ColoringRule rule = rule_from_json(load_arg(a.rule));
  const auto w = parse_list(a.window, 4, "--window");
  RenderOptions opts;
  opts.window = {w[0], w[1], w[2], w[3]};
  opts.pixels_per_unit = a.ppu;
  opts.palette = a.palette;
  if (!a.slice_tail.empty()) opts.slice_tail = parse_list(a.slice_tail, 0, "--slice-tail");
  const auto overlays = load_overlays(a.overlays);

  std::string svg;
  try {
    svg = render_svg(rule, opts, overlays);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("render: ") + e.what());
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw InputError(g.out + ": cannot write");
  f << svg;

  json cfg = g.echo();
  cfg["rule"] = to_json(rule);
  cfg["window"] = w;
  cfg["pixels_per_unit"] = a.ppu;
  cfg["palette"] = opts.palette.empty() ? default_palette() : opts.palette;
  cfg["slice_tail"] = opts.slice_tail;
  cfg["overlays"] = a.overlays;
  json r = {{"svg", g.out}, {"bytes", svg.size()}, {"overlay_polygons", overlays.size()}};
  Globals to_report = g;
  to_report.out = a.report;
  emit(to_report, make_report("render", cfg, r, ms_since(t0)));
  return kExitClean;
}

// ---- verify --------------------------------------------------------------

int cmd_verify_q5(const Globals& g, bool full, unsigned threads) {
  const auto t0 = Clock::now();
  const auto rep = full ? verify_q5_full() : verify_q5_lemma(threads);
  json cfg = g.echo();
  cfg["full_q5"] = full;
  cfg["threads"] = threads;
  emit(g, make_report("verify q5", cfg, to_json(rep), ms_since(t0)));
  return rep.counterexamples.empty() ? kExitClean : kExitWitness;
}

std::vector<Rational> offsets_from_json(const json& j) {
  const json& arr = j.is_object() && j.contains("offsets") ? j["offsets"] : j;
  if (!arr.is_array()) throw InputError("/offsets: expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& v = arr[i];
    try {
      if (v.is_number_integer()) {
        out.emplace_back(v.get<std::int64_t>());
      } else if (v.is_string()) {
        out.push_back(parse_rational(v.get<std::string>()));
      } else {
        throw std::invalid_argument("expected an integer or a \"p/q\" string");
      }
    } catch (const std::exception& e) {
      throw InputError("/offsets/" + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

int cmd_verify_triples(const Globals& g, const std::string& offsets_file, bool builtin) {
  const auto t0 = Clock::now();
  if (builtin == !offsets_file.empty())
    throw InputError("verify triples: give exactly one of --offsets FILE and --builtin-proof-set");
  const auto offsets = builtin ? builtin_proof_offsets() : offsets_from_json(load_arg(offsets_file));
  const TripleCSP csp = build_triple_csp(offsets);
  const CspResult res = solve_triple_csp(csp);

  json ground = json::array();
  for (const auto& o : csp.ground) ground.push_back(to_string(o));
  json constraints = json::array();
  for (const auto& c : csp.constraints)
    constraints.push_back({to_string(csp.ground[c.outer_lo]), to_string(csp.ground[c.middle]),
                           to_string(csp.ground[c.outer_hi])});
  json r;
  r["status"] = res.sat ? "sat" : "unsat";
  if (res.witness) r["witness"] = to_json(*res.witness);
  r["nodes"] = res.nodes;
  r["sufficient_N"] = sufficient_n(csp);
  r["ground"] = std::move(ground);
  r["constraints"] = std::move(constraints);

  json cfg = g.echo();
  cfg["builtin_proof_set"] = builtin;
  cfg["offsets"] = builtin ? json(nullptr) : json(offsets_file);
  emit(g, make_report("verify triples", cfg, r, ms_since(t0)));
  return res.sat ? kExitWitness : kExitClean;
}

// ---- check-coloring ------------------------------------------------------

struct CheckArgs {
  std::string rule;
  bool auto_block = false;
  std::string pattern;
  std::string mode = "mono";
  std::uint64_t trials = SamplerOptions{}.trials;
  std::string region = "-20,20;-20,20";
  unsigned threads = 0;
};

int cmd_check(const Globals& g, const CheckArgs& a) {
  const auto t0 = Clock::now();
  const Configuration pattern = configuration_from_json(load_arg(a.pattern), g.tol());
  json palette_info = nullptr;
  std::optional<ColoringRule> rule;
  if (a.auto_block) {
    if (!a.rule.empty()) throw InputError("check-coloring: --rule and --auto-block are exclusive");
    const auto bp = block_parameters(pattern, {SearchOptions{}.restarts, g.seed});
    rule = ColoringRule::block(bp.a, bp.num_colors);
    palette_info = {{"a", bp.a}, {"b", bp.b}, {"num_colors", bp.num_colors}, {"width_exact", bp.width_exact}};
  } else {
    if (a.rule.empty()) throw InputError("check-coloring: --rule or --auto-block is required");
    rule = rule_from_json(load_arg(a.rule));
  }
  Region region;
  try {
    region = Region::parse(a.region);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("--region: ") + e.what());
  }
  SamplerOptions opts;
  opts.trials = a.trials;
  opts.seed = g.seed;
  opts.threads = a.threads;
  opts.tol = g.tol();
  const ViolationReport rep = a.mode == "mono" ? verify_no_mono(*rule, pattern, region, opts)
                                               : verify_no_rainbow(*rule, pattern, region, opts);
  json r = to_json(rep);
  if (!rep.clean()) r["recheck"] = recheck(rep, g.tol());

  json cfg = g.echo();
  cfg["rule"] = to_json(*rule);
  if (!palette_info.is_null()) cfg["auto_block"] = palette_info;
  cfg["pattern"] = to_json(pattern);
  cfg["mode"] = a.mode;
  cfg["trials"] = a.trials;
  cfg["region"] = a.region;
  cfg["threads"] = a.threads;
  emit(g, make_report("check-coloring", cfg, r, ms_since(t0)));
  return rep.clean() ? kExitClean : kExitWitness;
}

// ---- find ----------------------------------------------------------------

struct FindArgs {
  std::string mode = "mono";
  std::string target;
  std::string input;
  bool expect_none = false;
};

int cmd_find(const Globals& g, const FindArgs& a) {
  const auto t0 = Clock::now();
  const Configuration target = configuration_from_json(load_arg(a.target), g.tol());
  const ColoredPointSet s = colored_set_from_json(load_arg(a.input), g.tol());
  const auto matches = a.mode == "mono" ? find_mono(s, target, g.tol()) : find_rainbow(s, target, g.tol());

  // Q5 inputs keep their position strings in the output.
  const json raw = load_arg(a.input)["points"];
  json out = json::array();
  for (const auto& m : matches) {
    json j = to_json(m);
    json pts = json::array(), labels = json::array(), colors = json::array();
    for (auto idx : m.assignment) {
      pts.push_back(to_json(s.points[idx]));
      labels.push_back(raw[idx].is_string() ? raw[idx] : json(idx));
      colors.push_back(s.colors[idx]);
    }
    std::string set;
    for (auto idx : m.indices) {
      if (!set.empty()) set += ',';
      set += raw[idx].is_string() ? raw[idx].get<std::string>() : std::to_string(idx);
    }
    j["set"] = set;
    j["points"] = std::move(pts);
    j["labels"] = std::move(labels);
    j["colors"] = std::move(colors);
    out.push_back(std::move(j));
  }
  json r = {{"mode", a.mode}, {"count", matches.size()}, {"matches", std::move(out)}};

  json cfg = g.echo();
  cfg["mode"] = a.mode;
  cfg["target"] = a.target;
  cfg["input"] = a.input;
  cfg["expect_none"] = a.expect_none;
  emit(g, make_report("find", cfg, r, ms_since(t0)));
  return a.expect_none && !matches.empty() ? kExitWitness : kExitClean;
}

// ---- propagate -----------------------------------------------------------

struct PropagateArgs {
  std::string points;
  std::string k2;
  int colors = 3;
  std::vector<std::string> seeds;
  int max_rounds = PropagationOptions{}.max_rounds;
  std::string schedule = "rounds";
  std::size_t slab_axis = 0;
};

Seed parse_seed(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
    std::size_t used = 0;
    const unsigned long long idx = std::stoull(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("bad index");
    const std::string c = text.substr(colon + 1);
    const unsigned long long color = std::stoull(c, &used);
    if (used != c.size()) throw std::invalid_argument("bad colour");
    return {static_cast<std::size_t>(idx), static_cast<ColorId>(color)};
  } catch (const std::exception&) {
    throw InputError("--seed: expected INDEX:COLOR, got \"" + text + "\"");
  }
}

int cmd_propagate(const Globals& g, const PropagateArgs& a) {
  const auto t0 = Clock::now();
  Configuration points = configuration_from_json(load_arg(a.points), g.tol());
  Configuration k2 = configuration_from_json(load_arg(a.k2), g.tol());
  std::vector<Seed> seeds;
  for (const auto& s : a.seeds) seeds.push_back(parse_seed(s));
  PropagationInstance inst;
  try {
    inst = build_instance(std::move(points), std::move(k2), a.colors, seeds, g.tol());
  } catch (const std::logic_error& e) {
    throw InputError(std::string("propagate: ") + e.what());
  }
  PropagationOptions opts;
  opts.max_rounds = a.max_rounds;
  opts.schedule = a.schedule == "chaotic" ? Schedule::Chaotic : Schedule::Rounds;
  opts.order_seed = g.seed;
  const auto res = propagate_fixpoint(inst, opts);

  json r;
  r["constraints"] = inst.constraints.size();
  r["rounds"] = res.rounds;
  r["prunings"] = res.prunings;
  r["converged"] = res.converged;
  r["contradiction"] = res.contradiction;
  r["allowed"] = to_json(res.map);
  r["summary"] = to_json(forcing_report(inst, res, a.slab_axis, g.tol()));

  json cfg = g.echo();
  cfg["points"] = a.points;
  cfg["k2"] = a.k2;
  cfg["colors"] = a.colors;
  json seeds_json = json::array();
  for (const auto& s : seeds) seeds_json.push_back({{"index", s.index}, {"color", s.color}});
  cfg["seeds"] = std::move(seeds_json);
  cfg["max_rounds"] = a.max_rounds;
  cfg["schedule"] = a.schedule;
  cfg["slab_axis"] = a.slab_axis;
  emit(g, make_report("propagate", cfg, r, ms_since(t0)));
  return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computational checks for Euclidean Gallai-Ramsey colourings"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for every randomised step");
  app.add_option("--tol-abs", g.tol_abs, "Absolute length tolerance");
  app.add_option("--tol-rel", g.tol_rel, "Relative length tolerance");
  app.add_option("--out", g.out, "Write the report (render: the SVG) to FILE");

  std::function<int()> run;

  InvariantsArgs inv;
  auto* c_inv = app.add_subcommand("invariants", "Diameter, box-width, circumradius and related invariants");
  c_inv->add_option("--config", inv.config, "Configuration JSON file or inline JSON")->required();
  c_inv->add_flag("--heights", inv.heights, "Include simplex heights in input order");
  c_inv->add_option("--subspace-dim", inv.subspace_dim, "Also bound the projection diameter onto k dimensions")
      ->check(CLI::NonNegativeNumber);
  c_inv->add_option("--restarts", inv.restarts, "Restarts for the frame search")->check(CLI::PositiveNumber);
  c_inv->callback([&] { run = [&] { return cmd_invariants(g, inv); }; });

  RenderArgs ren;
  auto* c_ren = app.add_subcommand("render", "Render a 2-D slice of a colouring to SVG");
  c_ren->add_option("--rule", ren.rule, "Colouring rule JSON file or inline JSON")->required();
  c_ren->add_option("--window", ren.window, "x0,x1,y0,y1");
  c_ren->add_option("--ppu", ren.ppu, "Pixels per unit")->check(CLI::PositiveNumber);
  c_ren->add_option("--palette", ren.palette, "Fill colours, one per colour id");
  c_ren->add_option("--slice-tail", ren.slice_tail, "Extra coordinates for rules on E^n, n > 2");
  c_ren->add_option("--overlay", ren.overlays, "Polygon overlays: configuration or find/check-coloring report");
  c_ren->add_option("--report", ren.report, "Write the JSON report to FILE instead of stdout");
  c_ren->callback([&] { run = [&] { return cmd_render(g, ren); }; });

  auto* c_ver = app.add_subcommand("verify", "Exhaustive finite checks");
  c_ver->require_subcommand(1);
  bool full_q5 = false;
  unsigned q5_threads = 1;
  auto* c_q5 = c_ver->add_subcommand("q5", "Every colouring of Q5(3): mono unit pair or rainbow unit square");
  c_q5->add_flag("--full-q5", full_q5, "Search all 32 points of Q5 instead");
  c_q5->add_option("--threads", q5_threads, "Worker threads")->check(CLI::PositiveNumber);
  c_q5->callback([&] { run = [&] { return cmd_verify_q5(g, full_q5, q5_threads); }; });
  std::string offsets_file;
  bool builtin = false;
  auto* c_tri = c_ver->add_subcommand("triples", "No colouring avoids mono and rainbow potential triples");
  c_tri->add_option("--offsets", offsets_file, "JSON array of offsets (integers or \"p/q\" strings)");
  c_tri->add_flag("--builtin-proof-set", builtin, "Use the 22-point grid {k, k+1/3, k+2/3 : k = 0..6} and 1/2");
  c_tri->callback([&] { run = [&] { return cmd_verify_triples(g, offsets_file, builtin); }; });

  CheckArgs chk;
  auto* c_chk = app.add_subcommand("check-coloring", "Sample placements of a pattern under a colouring");
  c_chk->add_option("--rule", chk.rule, "Colouring rule JSON file or inline JSON");
  c_chk->add_flag("--auto-block", chk.auto_block,
                  "Use Block(a = box-width, ceil(diameter/a)+1 colours) derived from the pattern");
  c_chk->add_option("--pattern", chk.pattern, "Configuration JSON file or inline JSON")->required();
  c_chk->add_option("--mode", chk.mode, "mono or rainbow")->check(CLI::IsMember({"mono", "rainbow"}));
  c_chk->add_option("--trials", chk.trials, "Random placements")->check(CLI::PositiveNumber);
  c_chk->add_option("--region", chk.region, "Translation box \"x0,x1;y0,y1;...\"");
  c_chk->add_option("--threads", chk.threads, "Worker threads (0: all cores)");
  c_chk->callback([&] { run = [&] { return cmd_check(g, chk); }; });

  FindArgs fnd;
  auto* c_fnd = app.add_subcommand("find", "Monochromatic or rainbow copies in a coloured point set");
  c_fnd->add_option("--mode", fnd.mode, "mono or rainbow")->check(CLI::IsMember({"mono", "rainbow"}))->required();
  c_fnd->add_option("--target", fnd.target, "Configuration to look for")->required();
  c_fnd->add_option("--input", fnd.input, "Coloured point set {points, colors}")->required();
  c_fnd->add_flag("--expect-none", fnd.expect_none, "Exit 1 if any copy is found");
  c_fnd->callback([&] { run = [&] { return cmd_find(g, fnd); }; });

  PropagateArgs prp;
  auto* c_prp = app.add_subcommand("propagate", "Allowed-colour fixpoint under no rainbow K2");
  c_prp->add_option("--points", prp.points, "Witness point set")->required();
  c_prp->add_option("--k2", prp.k2, "Configuration K2")->required();
  c_prp->add_option("--colors", prp.colors, "Number of colours r")->check(CLI::Range(1, 64));
  c_prp->add_option("--seed,--seed-color", prp.seeds, "Seeded point INDEX:COLOR (repeatable); the RNG seed goes before the subcommand");
  c_prp->add_option("--max-rounds", prp.max_rounds, "Round limit")->check(CLI::PositiveNumber);
  c_prp->add_option("--schedule", prp.schedule, "rounds or chaotic")->check(CLI::IsMember({"rounds", "chaotic"}));
  c_prp->add_option("--slab-axis", prp.slab_axis, "Axis for the per-slab summary");
  c_prp->callback([&] { run = [&] { return cmd_propagate(g, prp); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  try {
    return run();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
