#include "egr/propagate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <boost/pending/disjoint_sets.hpp>

namespace egr {

bool AllowedSetMap::is_subset_of(const AllowedSetMap& other) const {
  if (allowed.size() != other.allowed.size()) return false;
  for (std::size_t i = 0; i < allowed.size(); ++i)
    if (allowed[i] & ~other.allowed[i]) return false;
  return true;
}

PropagationInstance build_instance(Configuration points, Configuration k2, int r,
                                   std::vector<Seed> seeds, const Tolerance& tol) {
  if (r < 1 || r > 64) throw std::invalid_argument("number of colours must lie in [1, 64]");
  if (k2.size() < 2) throw std::invalid_argument("K2 needs at least two points");
  PropagationInstance inst;
  inst.r = r;
  const ColorMask full = r == 64 ? ~ColorMask{0} : (ColorMask{1} << r) - 1;
  inst.initial.r = r;
  inst.initial.allowed.assign(points.size(), full);
  for (const auto& s : seeds) {
    if (s.index >= points.size())
      throw std::out_of_range("seed index " + std::to_string(s.index) + " out of range");
    if (s.color >= static_cast<ColorId>(r))
      throw std::invalid_argument("seed colour " + std::to_string(s.color) + " >= r");
    inst.initial.allowed[s.index] &= ColorMask{1} << s.color;
  }
  for (auto& m : congruent_copies(points, k2, tol)) inst.constraints.push_back(std::move(m.assignment));
  inst.points = std::move(points);
  inst.k2 = std::move(k2);
  inst.seeds = std::move(seeds);
  return inst;
}

ColorMask tuple_support(const std::vector<ColorMask>& sets, std::size_t p) {
  ColorMask others = 0;
  bool overlap = false;
  for (std::size_t q = 0; q < sets.size(); ++q) {
    if (q == p) continue;
    if (sets[q] == 0) return 0;
    overlap = overlap || (sets[q] & others) != 0;
    others |= sets[q];
  }
  // Any colour is fine once two other points can already repeat a colour.
  return overlap ? sets[p] : (sets[p] & others);
}

namespace {

// Returns the number of colours removed; `read` and `write` may alias.
std::uint64_t revise(const std::vector<std::size_t>& tuple, const std::vector<ColorMask>& read,
                     std::vector<ColorMask>& write, std::vector<ColorMask>& scratch) {
  scratch.resize(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i) scratch[i] = read[tuple[i]];
  std::uint64_t removed = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const ColorMask keep = tuple_support(scratch, i);
    const ColorMask before = write[tuple[i]];
    write[tuple[i]] = before & keep;
    removed += static_cast<std::uint64_t>(std::popcount(before & ~write[tuple[i]]));
  }
  return removed;
}

bool any_empty(const std::vector<ColorMask>& m) {
  return std::any_of(m.begin(), m.end(), [](ColorMask s) { return s == 0; });
}

}  // namespace

PropagationResult propagate_fixpoint(const PropagationInstance& inst,
                                     const PropagationOptions& opts) {
  return propagate_fixpoint(inst, inst.initial, opts);
}

PropagationResult propagate_fixpoint(const PropagationInstance& inst,
                                     const AllowedSetMap& start,
                                     const PropagationOptions& opts) {
  PropagationResult res;
  res.map = start;
  auto& cur = res.map.allowed;
  if (any_empty(cur)) {
    res.contradiction = true;
    return res;
  }
  std::vector<std::size_t> order(inst.constraints.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(opts.order_seed);
  std::vector<ColorMask> scratch;

  while (true) {
    if (res.rounds >= opts.max_rounds) {
      res.converged = false;
      break;
    }
    ++res.rounds;
    std::uint64_t removed = 0;
    if (opts.schedule == Schedule::Rounds) {
      const std::vector<ColorMask> snapshot = cur;
      for (std::size_t k : order) removed += revise(inst.constraints[k], snapshot, cur, scratch);
    } else {
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t k : order) removed += revise(inst.constraints[k], cur, cur, scratch);
    }
    res.prunings += removed;
    if (opts.record_history) res.history.push_back(res.map);
    if (any_empty(cur)) {
      res.contradiction = true;
      break;
    }
    if (removed == 0) break;
  }
  return res;
}

ComponentColoring flood_fill_two_point(const Configuration& points, std::size_t seed_index,
                                       double d, const Tolerance& tol) {
  const std::size_t n = points.size();
  if (seed_index >= n) throw std::out_of_range("seed index out of range");
  std::vector<std::size_t> rank(n, 0), parent(n);
  boost::disjoint_sets<std::size_t*, std::size_t*> sets(rank.data(), parent.data());
  for (std::size_t i = 0; i < n; ++i) sets.make_set(i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (tol.match(distance(points[i], points[j]), d)) sets.union_set(i, j);

  ComponentColoring out;
  out.component.resize(n);
  std::vector<std::size_t> id_of_root(n, SIZE_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = sets.find_set(i);
    if (id_of_root[root] == SIZE_MAX) id_of_root[root] = out.num_components++;
    out.component[i] = id_of_root[root];
  }
  out.forced.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.forced[i] = out.component[i] == out.component[seed_index];
  return out;
}

ForcingReport forcing_report(const PropagationInstance& inst, const PropagationResult& res,
                             std::size_t slab_axis, const Tolerance& tol) {
  ForcingReport rep;
  rep.points = inst.points.size();
  rep.r = inst.r;
  rep.rounds = res.rounds;
  rep.contradiction = res.contradiction;
  rep.slab_axis = slab_axis;
  rep.by_cardinality.assign(static_cast<std::size_t>(inst.r) + 1, 0);
  for (ColorMask m : res.map.allowed) ++rep.by_cardinality[static_cast<std::size_t>(std::popcount(m))];
  if (rep.points > 0) {
    rep.singleton_fraction = static_cast<double>(rep.by_cardinality[1]) / static_cast<double>(rep.points);
    rep.full_fraction = static_cast<double>(rep.by_cardinality.back()) / static_cast<double>(rep.points);
  }
  if (slab_axis >= inst.points.dim()) return rep;

  std::vector<std::size_t> idx(rep.points);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return inst.points[a][slab_axis] < inst.points[b][slab_axis];
  });
  for (std::size_t i : idx) {
    const double x = inst.points[i][slab_axis];
    if (rep.slabs.empty() || !tol.match(rep.slabs.back().coordinate, x)) {
      SlabSummary s;
      s.coordinate = x;
      s.by_cardinality.assign(static_cast<std::size_t>(inst.r) + 1, 0);
      rep.slabs.push_back(std::move(s));
    }
    auto& slab = rep.slabs.back();
    ++slab.points;
    ++slab.by_cardinality[static_cast<std::size_t>(std::popcount(res.map.allowed[i]))];
  }
  return rep;
}

Configuration lattice_box(const std::vector<std::pair<int, int>>& ranges, double spacing) {
  if (ranges.empty()) throw std::invalid_argument("lattice needs at least one axis");
  for (const auto& [lo, hi] : ranges)
    if (lo > hi) throw std::invalid_argument("lattice range has lo > hi");
  std::vector<Point> pts;
  std::vector<int> cur;
  for (const auto& r : ranges) cur.push_back(r.first);
  while (true) {
    std::vector<double> c;
    for (int v : cur) c.push_back(v * spacing);
    pts.emplace_back(std::move(c));
    std::size_t axis = ranges.size();
    while (axis > 0) {
      --axis;
      if (cur[axis] < ranges[axis].second) {
        ++cur[axis];
        break;
      }
      cur[axis] = ranges[axis].first;
      if (axis == 0) return Configuration(std::move(pts), "lattice");
    }
  }
}

Configuration right_triangle(double a, double b, std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("right triangle needs dimension >= 2");
  std::vector<double> o(dim, 0.0), x(dim, 0.0), y(dim, 0.0);
  x[0] = a;
  y[1] = b;
  return Configuration({Point(o), Point(x), Point(y)}, "right-triangle");
}

Configuration segment(double d, std::size_t dim) {
  std::vector<double> o(dim, 0.0), x(dim, 0.0);
  x[0] = d;
  return Configuration({Point(o), Point(x)}, "segment");
}

Configuration bisector_chain(std::size_t steps, double d, double spacing) {
  if (!(spacing > 0.0) || spacing > 2 * d)
    throw std::invalid_argument("bisector chain spacing must lie in (0, 2d]");
  const double apex = std::sqrt(std::max(0.0, d * d - spacing * spacing / 4));
  std::vector<Point> pts;
  for (std::size_t i = 0; i <= steps; ++i) pts.push_back(Point{static_cast<double>(i) * spacing, 0.0});
  for (std::size_t i = 0; i < steps; ++i)
    pts.push_back(Point{(static_cast<double>(i) + 0.5) * spacing, apex});
  return Configuration(std::move(pts), "bisector-chain");
}

}  // namespace egr
