#include <doctest.h>

#include <algorithm>
#include <bit>
#include <functional>
#include <random>

#include "egr/propagate.hpp"
#include "oracles.hpp"

using namespace egr;

namespace {

std::size_t index_of(const Configuration& c, std::vector<double> coords) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i].coords().size() == coords.size() && std::equal(coords.begin(), coords.end(), c[i].coords().begin()))
      return i;
  throw std::logic_error("point not found");
}

bool rainbow_tuple(const std::vector<int>& col, const std::vector<std::size_t>& t) {
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = a + 1; b < t.size(); ++b)
      if (col[t[a]] == col[t[b]]) return false;
  return true;
}

// Colours each point takes in at least one seed-respecting colouring with no
// rainbow constraint tuple, by exhaustive enumeration.
std::vector<ColorMask> feasible_colours(const PropagationInstance& inst) {
  std::vector<ColorMask> seen(inst.points.size(), 0);
  oracle::for_each_coloring(inst.points.size(), inst.r, [&](const std::vector<int>& col) {
    for (const auto& s : inst.seeds)
      if (col[s.index] != static_cast<int>(s.color)) return;
    for (const auto& t : inst.constraints)
      if (rainbow_tuple(col, t)) return;
    for (std::size_t i = 0; i < col.size(); ++i) seen[i] |= ColorMask{1} << col[i];
  });
  return seen;
}

// Backtracking variant for larger instances: is there a valid colouring with
// point p coloured c?
bool extendable(const PropagationInstance& inst, std::size_t p, int c) {
  const std::size_t n = inst.points.size();
  std::vector<std::vector<std::size_t>> closing(n);
  for (std::size_t k = 0; k < inst.constraints.size(); ++k) {
    const auto& t = inst.constraints[k];
    closing[*std::max_element(t.begin(), t.end())].push_back(k);
  }
  std::vector<int> col(n, -1);
  std::function<bool(std::size_t)> go = [&](std::size_t v) {
    if (v == n) return true;
    for (int k = 0; k < inst.r; ++k) {
      if (!((inst.initial.allowed[v] >> k) & 1) || (v == p && k != c)) continue;
      col[v] = k;
      bool ok = true;
      for (std::size_t ci : closing[v]) ok = ok && !rainbow_tuple(col, inst.constraints[ci]);
      if (ok && go(v + 1)) return true;
    }
    col[v] = -1;
    return false;
  };
  return go(0);
}

PropagationInstance random_instance(std::mt19937_64& rng, std::size_t max_points) {
  const std::size_t n = 3 + rng() % (max_points - 2);
  std::vector<Point> pts;
  std::set<std::pair<int, int>> seen;
  while (pts.size() < n) {
    const int x = static_cast<int>(rng() % 4), y = static_cast<int>(rng() % 3);
    if (seen.insert({x, y}).second) pts.push_back(Point{double(x), double(y)});
  }
  const Configuration k2 = (rng() % 2) ? right_triangle(1, 1) : segment(1, 2);
  const int r = 2 + static_cast<int>(rng() % 2);
  std::vector<Seed> seeds;
  const std::size_t num_seeds = rng() % 3;
  for (std::size_t s = 0; s < num_seeds; ++s) seeds.push_back({rng() % n, rng() % static_cast<unsigned>(r)});
  return build_instance(Configuration(pts), k2, r, seeds);
}

}  // namespace

TEST_CASE("instance construction") {
  const auto line = lattice_box({{0, 10}});
  const auto inst = build_instance(line, segment(1), 3, {{0, 0}});
  CHECK(inst.constraints.size() == 10);
  CHECK(inst.initial.allowed[0] == 0b001);
  for (std::size_t i = 1; i < 11; ++i) CHECK(inst.initial.allowed[i] == 0b111);

  const auto unseeded = build_instance(line, segment(1), 3, {});
  CHECK(std::all_of(unseeded.initial.allowed.begin(), unseeded.initial.allowed.end(),
                    [](ColorMask m) { return m == 0b111; }));

  CHECK_THROWS(build_instance(line, segment(1), 3, {{11, 0}}));
  CHECK_THROWS(build_instance(line, segment(1), 3, {{0, 3}}));
  CHECK_THROWS(build_instance(line, segment(1), 0, {}));
  CHECK_THROWS(build_instance(line, segment(1), 65, {}));

  // Right isosceles triangles in a 5x5x2 lattice slab, against brute force.
  const auto slab = lattice_box({{0, 4}, {0, 4}, {0, 1}});
  CHECK(slab.size() == 50);
  const auto tri = build_instance(slab, right_triangle(1, 1, 3), 3, {});
  std::set<std::vector<std::size_t>> got;
  for (auto t : tri.constraints) {
    std::sort(t.begin(), t.end());
    got.insert(t);
  }
  CHECK(got == oracle::copies(slab, right_triangle(1, 1, 3)));
  CHECK(got.size() == tri.constraints.size());
}

TEST_CASE("lattice and chain builders") {
  const auto box = lattice_box({{0, 1}, {-1, 1}}, 0.5);
  CHECK(box.size() == 6);
  CHECK(box[0][0] == 0);
  CHECK(box[0][1] == -0.5);
  CHECK(box[1][1] == 0);
  CHECK_THROWS(lattice_box({{2, 1}}));

  const auto chain = bisector_chain(4, 1.0, 1.2);
  CHECK(chain.size() == 9);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(oracle::dist(chain[5 + i], chain[i]) == doctest::Approx(1.0));
    CHECK(oracle::dist(chain[5 + i], chain[i + 1]) == doctest::Approx(1.0));
  }
  CHECK_THROWS(bisector_chain(3, 1.0, 2.5));
}

TEST_CASE("one-dimensional lattice is forced to the seed colour") {
  const auto inst = build_instance(lattice_box({{0, 10}}), segment(1), 3, {{0, 0}});
  const auto res = propagate_fixpoint(inst);
  CHECK_FALSE(res.contradiction);
  CHECK(res.converged);
  for (auto m : res.map.allowed) CHECK(m == 0b001);
  const auto rep = forcing_report(inst, res);
  CHECK(rep.singleton_fraction == 1.0);
  CHECK(rep.full_fraction == 0.0);
}

TEST_CASE("unseeded instances prune nothing") {
  for (const auto& k2 : {segment(1, 2), right_triangle(1, 1)}) {
    const auto inst = build_instance(lattice_box({{0, 3}, {0, 3}}), k2, 3, {});
    const auto res = propagate_fixpoint(inst);
    CHECK(res.prunings == 0);
    CHECK(res.rounds == 1);
    const auto rep = forcing_report(inst, res);
    CHECK(rep.full_fraction == 1.0);
  }
}

TEST_CASE("contradictions are reported") {
  // Two adjacent seeds with different colours and no rainbow unit pair.
  const auto inst = build_instance(lattice_box({{0, 3}}), segment(1), 2, {{0, 0}, {1, 1}});
  const auto res = propagate_fixpoint(inst);
  CHECK(res.contradiction);
  CHECK(forcing_report(inst, res).contradiction);
}

TEST_CASE("tuple support") {
  // Others {0} and {1}: disjoint, so the third point keeps only {0, 1}.
  CHECK(tuple_support({0b001, 0b010, 0b111}, 2) == 0b011);
  // Others can repeat a colour, so nothing is pruned.
  CHECK(tuple_support({0b011, 0b010, 0b111}, 2) == 0b111);
  CHECK(tuple_support({0b001, 0b111}, 1) == 0b001);
  CHECK(tuple_support({0b000, 0b111}, 1) == 0);
}

TEST_CASE("right-triangle slab with two seeds") {
  const auto slab = lattice_box({{0, 4}, {0, 4}, {0, 1}});
  const std::size_t origin = index_of(slab, {0, 0, 0});
  const std::size_t a1 = index_of(slab, {1, 0, 0});
  const auto inst = build_instance(slab, right_triangle(1, 1, 3), 3, {{origin, 0}, {a1, 1}});
  const auto res = propagate_fixpoint(inst);
  REQUIRE_FALSE(res.contradiction);
  constexpr ColorMask red_blue = 0b011;

  // The seeds' unit neighbours in the x = 0 plane close a triangle with both
  // seeds, so they lose the third colour.
  CHECK((res.map.allowed[index_of(slab, {0, 1, 0})] & ~red_blue) == 0);
  CHECK((res.map.allowed[index_of(slab, {0, 0, 1})] & ~red_blue) == 0);

  // On the x = 0 plane the fixpoint prunes green exactly where no valid
  // colouring of the whole slab uses green.
  for (std::size_t i = 0; i < slab.size(); ++i) {
    if (slab[i][0] != 0) continue;
    const bool green_allowed = (res.map.allowed[i] >> 2) & 1;
    CHECK(green_allowed == extendable(inst, i, 2));
  }

  const auto rep = forcing_report(inst, res, 0);
  REQUIRE(rep.slabs.size() == 5);
  CHECK(rep.slabs[0].coordinate == 0);
  CHECK(rep.slabs[0].points == 10);
  // Regression pin from the desk-scale run.
  CHECK(rep.slabs[0].by_cardinality == std::vector<std::size_t>{0, 1, 2, 7});
  CHECK(rep.rounds == 2);
  CHECK(res.prunings == 4);
}

TEST_CASE("bisector chain forcing") {
  const auto chain = bisector_chain(6, 1.0, 1.5);
  const auto inst = build_instance(chain, segment(1.0, 2), 4, {{0, 2}});
  const auto res = propagate_fixpoint(inst);
  for (auto m : res.map.allowed) CHECK(m == 0b0100);
  const auto ff = flood_fill_two_point(chain, 0, 1.0);
  CHECK(ff.num_components == 1);
}

TEST_CASE("flood fill") {
  const auto grid = lattice_box({{-3, 3}, {-3, 3}});
  const std::size_t origin = index_of(grid, {0, 0});
  auto ff = flood_fill_two_point(grid, origin, 1.0);
  CHECK(ff.num_components == 1);
  CHECK(std::all_of(ff.forced.begin(), ff.forced.end(), [](bool b) { return b; }));

  ff = flood_fill_two_point(grid, origin, 0.3);
  CHECK(ff.num_components == grid.size());
  CHECK(std::count(ff.forced.begin(), ff.forced.end(), true) == 1);

  const Configuration clusters({Point{0, 0}, Point{1, 0}, Point{10, 0}, Point{11, 0}});
  ff = flood_fill_two_point(clusters, 0, 1.0);
  CHECK(ff.num_components == 2);
  CHECK(ff.component == std::vector<std::size_t>{0, 0, 1, 1});
  CHECK(ff.forced == std::vector<bool>{true, true, false, false});
  CHECK_THROWS(flood_fill_two_point(clusters, 4, 1.0));
}

TEST_CASE("flood fill agrees with two-point propagation") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 30; ++t) {
    std::vector<Point> pts;
    std::set<std::pair<int, int>> seen;
    const std::size_t n = 2 + rng() % 20;
    while (pts.size() < n) {
      const int x = static_cast<int>(rng() % 6), y = static_cast<int>(rng() % 6);
      if (seen.insert({x, y}).second) pts.push_back(Point{double(x), double(y)});
    }
    const Configuration c(pts);
    const std::size_t seed = rng() % n;
    const auto ff = flood_fill_two_point(c, seed, 1.0);
    const auto res = propagate_fixpoint(build_instance(c, segment(1, 2), 3, {{seed, 1}}));
    for (std::size_t i = 0; i < n; ++i) CHECK(ff.forced[i] == (res.map.allowed[i] == 0b010));
  }
}

TEST_CASE("propagation properties on random instances") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 20; ++t) {
    const auto inst = random_instance(rng, 12);
    PropagationOptions opts;
    opts.record_history = true;
    const auto res = propagate_fixpoint(inst, opts);

    // Monotone: each round's map is inside the previous one.
    AllowedSetMap prev = inst.initial;
    for (const auto& h : res.history) {
      CHECK(h.is_subset_of(prev));
      prev = h;
    }

    if (!res.contradiction) {
      const auto again = propagate_fixpoint(inst, res.map);
      CHECK(again.prunings == 0);
      CHECK(again.map == res.map);
    }

    for (std::uint64_t s = 0; s < 10; ++s) {
      PropagationOptions chaotic;
      chaotic.schedule = Schedule::Chaotic;
      chaotic.order_seed = s;
      const auto other = propagate_fixpoint(inst, chaotic);
      CHECK(other.contradiction == res.contradiction);
      if (!res.contradiction) CHECK(other.map == res.map);
    }

    // Sound: every valid colouring stays inside the fixpoint.
    const auto feasible = feasible_colours(inst);
    for (std::size_t i = 0; i < feasible.size(); ++i)
      CHECK((feasible[i] & ~res.map.allowed[i]) == 0);
  }
}

TEST_CASE("max_rounds stops early") {
  const auto inst = build_instance(lattice_box({{0, 10}}), segment(1), 3, {{0, 0}});
  PropagationOptions opts;
  opts.max_rounds = 2;
  const auto res = propagate_fixpoint(inst, opts);
  CHECK_FALSE(res.converged);
  CHECK(res.rounds == 2);
}
