// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "egr/colorings.hpp"
#include "egr/hamming.hpp"
#include "egr/patterns.hpp"
#include "egr/propagate.hpp"
#include "egr/q5_lemma.hpp"
#include "egr/sampling.hpp"
#include "egr/triples.hpp"
#include "oracles.hpp"

using namespace egr;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome q5_lemma() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto rep = verify_q5_lemma(1);
  const double s = seconds_since(t0);
  const auto bell = oracle::bell_numbers(10)[10];
  o.require(rep.partitions_checked == 115975, "115975 partitions");
  o.require(rep.partitions_checked == bell, "Bell-triangle count");
  o.require(rep.case1_hits + rep.case2_hits == rep.partitions_checked, "case counts sum");
  o.require(rep.counterexamples.empty(), "no counterexamples");
  o.require(s < 30, "under 30 s");
  o.detail << " checked=" << rep.partitions_checked << " case1=" << rep.case1_hits
           << " case2=" << rep.case2_hits << " counterexamples=" << rep.counterexamples.size();
  return o;
}

Outcome triples_unsat() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto csp = build_triple_csp(builtin_proof_offsets());
  const auto res = solve_triple_csp(csp);
  const double s = seconds_since(t0);
  o.require(csp.ground.size() == 22, "22 ground points");
  o.require(!res.sat, "unsat");
  o.require(s < 10, "under 10 s");

  const double n = 100;
  const std::vector<PotentialTriple<double>> opening = {{n + 1, n, n + 1}, {n, n, n + 2}, {n + 2, n + 1, n + 2}};
  for (const auto& t : opening) {
    o.require(is_potential_triple(t), "opening triple is potential");
    o.require(is_potential_triple(PotentialTriple<Rational>{Rational(static_cast<std::int64_t>(t.y1)),
                                                            Rational(static_cast<std::int64_t>(t.y2)),
                                                            Rational(static_cast<std::int64_t>(t.y3))}),
              "opening triple is potential (exact)");
    const auto c = realize_triple(t);
    const double y[3] = {t.y1, t.y2, t.y3};
    for (std::size_t i = 0; i < 3; ++i) o.require(std::abs(c[i].squared_norm() - y[i]) <= 1e-9, "norms");
    o.require(std::abs(oracle::dist(c[0], c[1]) - 1) <= 1e-9 && std::abs(oracle::dist(c[1], c[2]) - 1) <= 1e-9 &&
                  std::abs(oracle::dist(c[0], c[2]) - 2) <= 1e-9,
              "unit-spaced line");
  }
  o.detail << " constraints=" << csp.constraints.size() << " nodes=" << res.nodes
           << " sufficient_N=" << sufficient_n(csp);
  return o;
}

Outcome block_coloring() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto rule = ColoringRule::block(1, 3);
  const auto region = Region::cube(2, -20, 20);
  SamplerOptions opts;
  opts.trials = 100000;
  opts.seed = 2024;
  const double s3 = std::sqrt(3.0);
  const Configuration rect({Point{0, 0}, Point{1, 0}, Point{1, s3}, Point{0, s3}});
  o.require(std::abs(diameter(rect) - 2) <= 1e-9, "rectangle diameter 2");
  o.require(std::abs(box_width(rect).width - 1) <= 1e-9, "rectangle box-width 1");
  const auto mono = verify_no_mono(rule, rect, region, opts);
  o.require(mono.clean() && mono.trials_run == opts.trials, "no monochromatic rectangle");

  std::vector<Configuration> ps = {
      Configuration({Point{0, 0}, Point{1, 0}, Point{0.5, s3 / 2}}),
      Configuration({Point{0, 0}, Point{0.5, 0}, Point{1, 0}}),
  };
  std::mt19937_64 rng(5);
  while (ps.size() < 5) {
    auto c = oracle::random_configuration(rng, 3, 2);
    const double d = diameter(c);
    std::vector<Point> scaled;
    for (const auto& p : c.points()) scaled.push_back(Point{p[0] / d, p[1] / d});
    ps.emplace_back(std::move(scaled));
  }
  std::size_t rainbow_trials = 0;
  for (const auto& p : ps) {
    o.require(diameter(p) <= 1 + 1e-12, "P diameter at most 1");
    const auto rep = verify_no_rainbow(rule, p, region, opts);
    o.require(rep.clean(), "no rainbow P");
    rainbow_trials += rep.trials_run;
  }
  const double s = seconds_since(t0);
  o.require(s < 20, "under 20 s");
  o.detail << " mono_trials=" << mono.trials_run << " rainbow_trials=" << rainbow_trials
           << " P_sets=" << ps.size();
  return o;
}

Outcome spherical_mod4() {
  Outcome o;
  const auto t0 = Clock::now();
  SamplerOptions opts;
  opts.trials = 100000;
  opts.seed = 4;
  const Configuration l3({Point{0, 0}, Point{1, 0}, Point{2, 0}});
  const auto rep = verify_no_mono(ColoringRule::spherical_floor_mod(4), l3, Region::cube(2, -50, 50), opts);
  o.require(rep.clean() && rep.trials_run == opts.trials, "no monochromatic l3");
  o.require(seconds_since(t0) < 20, "under 20 s");
  o.detail << " trials=" << rep.trials_run;
  return o;
}

Outcome geometry_invariants() {
  Outcome o;
  const double r = circumradius(to_configuration(q5_points()));
  o.require(std::abs(r - std::sqrt(5.0 / 8.0)) <= 1e-9, "circumradius of Q5");

  std::mt19937_64 rng(55);
  int bound_failures = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto c = oracle::random_configuration(rng, 2 + rng() % 12, 1 + rng() % 5, 1 + static_cast<double>(rng() % 10));
    const double d = diameter(c), rho = circumradius(c);
    if (!(d / 2 <= rho + 1e-9 && rho <= d + 1e-9)) ++bound_failures;
  }
  o.require(bound_failures == 0, "diameter/2 <= circumradius <= diameter");

  int copy_failures = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t dim = 2 + rng() % 2;
    const std::size_t n = 2 + rng() % 11;
    std::set<std::vector<int>> seen;
    std::vector<Point> hay;
    while (hay.size() < n) {
      std::vector<int> v(dim);
      for (auto& x : v) x = static_cast<int>(rng() % 4);
      if (!seen.insert(v).second) continue;
      hay.emplace_back(std::vector<double>(v.begin(), v.end()));
    }
    const Configuration haystack(hay);
    const std::size_t k = 2 + rng() % std::min<std::size_t>(3, n - 1);
    std::vector<std::size_t> pick(n);
    std::iota(pick.begin(), pick.end(), 0);
    std::shuffle(pick.begin(), pick.end(), rng);
    std::vector<Point> needle;
    for (std::size_t i = 0; i < k; ++i) needle.push_back(hay[pick[i]]);
    std::set<std::vector<std::size_t>> got;
    for (const auto& m : congruent_copies(haystack, Configuration(needle))) got.insert(m.indices);
    if (got != oracle::copies(haystack, Configuration(needle))) ++copy_failures;
  }
  o.require(copy_failures == 0, "congruent_copies equals brute force");
  o.detail << " circumradius=" << r << " bound_failures=" << bound_failures << " copy_failures=" << copy_failures;
  return o;
}

Outcome propagation() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(606);
  int checked = 0, sound = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 4 + rng() % 9;
    std::vector<Point> pts;
    std::set<std::pair<int, int>> seen;
    while (pts.size() < n) {
      const int x = static_cast<int>(rng() % 4), y = static_cast<int>(rng() % 3);
      if (seen.insert({x, y}).second) pts.push_back(Point{double(x), double(y)});
    }
    const int r = 2 + static_cast<int>(rng() % 2);
    const Configuration k2 = (t % 2) ? right_triangle(1, 1) : segment(1, 2);
    std::vector<Seed> seeds;
    for (std::size_t s = 0, m = 1 + rng() % 2; s < m; ++s) seeds.push_back({rng() % n, rng() % static_cast<unsigned>(r)});
    const auto inst = build_instance(Configuration(pts), k2, r, seeds);

    PropagationOptions opts;
    opts.record_history = true;
    const auto res = propagate_fixpoint(inst, opts);
    AllowedSetMap prev = inst.initial;
    for (const auto& h : res.history) {
      o.require(h.is_subset_of(prev), "monotone");
      prev = h;
    }
    if (!res.contradiction) {
      const auto again = propagate_fixpoint(inst, res.map);
      o.require(again.prunings == 0 && again.map == res.map, "idempotent");
    }
    for (std::uint64_t s = 0; s < 10; ++s) {
      PropagationOptions chaotic;
      chaotic.schedule = Schedule::Chaotic;
      chaotic.order_seed = s;
      const auto other = propagate_fixpoint(inst, chaotic);
      o.require(other.contradiction == res.contradiction && (res.contradiction || other.map == res.map),
                "order-confluent");
    }

    // Soundness against every colouring of the instance.
    bool ok = true;
    oracle::for_each_coloring(n, r, [&](const std::vector<int>& col) {
      for (const auto& s : inst.seeds)
        if (col[s.index] != static_cast<int>(s.color)) return;
      for (const auto& tup : inst.constraints) {
        std::set<int> cs;
        for (auto i : tup) cs.insert(col[i]);
        if (cs.size() == tup.size()) return;
      }
      for (std::size_t i = 0; i < n; ++i) ok = ok && ((res.map.allowed[i] >> col[i]) & 1);
    });
    o.require(ok, "sound");
    sound += ok;
    ++checked;
  }

  const auto line = build_instance(lattice_box({{0, 10}}), segment(1), 3, {{0, 0}});
  const auto demo = propagate_fixpoint(line);
  bool all_seed = !demo.contradiction;
  for (auto m : demo.map.allowed) all_seed = all_seed && m == 0b001;
  o.require(all_seed, "1-D lattice forced to the seed colour");
  o.require(seconds_since(t0) < 60, "under 60 s");
  o.detail << " instances=" << checked << " sound=" << sound << " demo_rounds=" << demo.rounds;
  return o;
}

std::size_t mono_pairs_under(const std::map<std::string, ColorId>& classes, std::size_t* rainbow_named) {
  const auto layer = q5_layer(3);
  std::vector<ColorId> colors;
  for (const auto& p : layer) colors.push_back(classes.at(p.to_string()));
  const ColoredPointSet s(to_configuration(layer), colors);
  const Configuration pair({Point{0, 0, 0, 0, 0}, Point{1, 0, 0, 0, 0}});
  const Configuration square(
      {Point{0, 0, 0, 0, 0}, Point{1, 0, 0, 0, 0}, Point{1, 1, 0, 0, 0}, Point{0, 1, 0, 0, 0}});
  *rainbow_named = 0;
  for (const auto& m : find_rainbow(s, square)) {
    std::set<std::string> names;
    for (auto i : m.indices) names.insert(layer[i].to_string());
    *rainbow_named += names == std::set<std::string>{"125", "135", "245", "345"};
  }
  return find_mono(s, pair).size();
}

Outcome pattern_search() {
  Outcome o;
  // End state of the case analysis: 123=345, 125=234, 124=135, 134=245.
  // The argument leaves 145 and 235 open; each has unit neighbours in all four
  // classes, so they take a fifth colour (they are sqrt 2 apart).
  std::map<std::string, ColorId> forced = {{"123", 0}, {"345", 0}, {"234", 1}, {"125", 1}, {"124", 2},
                                           {"135", 2}, {"134", 3}, {"245", 3}, {"145", 4}, {"235", 4}};
  std::size_t named = 0;
  const auto mono = mono_pairs_under(forced, &named);
  o.require(named == 1, "rainbow square {125,135,245,345}");
  o.require(mono == 0, "no monochromatic unit pair");

  // With 145 and 235 folded into the first class the rainbow square is still
  // found, but 123-235, 145-345 and 235-345 become monochromatic unit pairs.
  auto folded = forced;
  folded["145"] = folded["235"] = 0;
  std::size_t folded_named = 0;
  const auto folded_mono = mono_pairs_under(folded, &folded_named);
  o.detail << " mono_pairs=" << mono << " rainbow_named=" << named << " | 145,235 in class A: rainbow_named="
           << folded_named << " mono_pairs=" << folded_mono;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 q5 lemma: every partition of Q5(3) has case 1 or case 2", q5_lemma},
      {"2 potential-triple CSP on the 22-point grid is unsat", triples_unsat},
      {"3 Block(1,3): no mono 1 x sqrt3 rectangle, no rainbow P", block_coloring},
      {"4 spherical floor mod 4: no mono l3", spherical_mod4},
      {"5 geometry invariants", geometry_invariants},
      {"6 propagation properties", propagation},
      {"7 pattern search on the forced Q5(3) colouring", pattern_search},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double ms = seconds_since(t0) * 1000;
    std::printf("%s  %s (%.0f ms)%s\n", o.pass ? "PASS" : "FAIL", name, ms, o.detail.str().c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
