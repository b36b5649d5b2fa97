#pragma once

// Fixpoint propagation of allowed colours under "no rainbow copy of K2" on a
// finite witness point set.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "egr/colorings.hpp"
#include "egr/geometry.hpp"

namespace egr {

using ColorMask = std::uint64_t;

/// Per-point allowed colour sets over {0..r-1}.
struct AllowedSetMap {
  std::vector<ColorMask> allowed;
  int r = 0;

  bool is_subset_of(const AllowedSetMap& other) const;
  friend bool operator==(const AllowedSetMap&, const AllowedSetMap&) = default;
};

struct Seed {
  std::size_t index = 0;
  ColorId color = 0;
};

struct PropagationInstance {
  Configuration points;
  Configuration k2;
  int r = 0;
  std::vector<Seed> seeds;
  /// One tuple per congruent copy of K2, needle order.
  std::vector<std::vector<std::size_t>> constraints;
  AllowedSetMap initial;
};

/// Enumerates the copies of K2 in `points` and seeds the allowed sets.
/// Throws on r outside [1, 64], |K2| < 2, or bad seeds.
PropagationInstance build_instance(Configuration points, Configuration k2, int r,
                                   std::vector<Seed> seeds, const Tolerance& tol = {});

enum class Schedule {
  Rounds,   // all constraints read the round-start map; prunings applied together
  Chaotic,  // prunings applied immediately, constraint order shuffled per pass
};

struct PropagationOptions {
  Schedule schedule = Schedule::Rounds;
  std::uint64_t order_seed = 0;  // Chaotic only
  int max_rounds = 1000000;
  bool record_history = false;
};

struct PropagationResult {
  AllowedSetMap map;
  int rounds = 0;
  std::uint64_t prunings = 0;
  bool contradiction = false;
  bool converged = true;  // false when max_rounds stopped the run
  std::vector<AllowedSetMap> history;  // map after each round, if recorded
};

/// Colours a point may keep given a tuple: c survives at p unless no other
/// tuple point admits c and the other points' sets are pairwise disjoint.
ColorMask tuple_support(const std::vector<ColorMask>& sets, std::size_t p);

PropagationResult propagate_fixpoint(const PropagationInstance& inst,
                                     const PropagationOptions& opts = {});

/// Same instance with `map` as the starting allowed sets.
PropagationResult propagate_fixpoint(const PropagationInstance& inst,
                                     const AllowedSetMap& start,
                                     const PropagationOptions& opts = {});

struct ComponentColoring {
  std::vector<std::size_t> component;  // component id per point, ids by first occurrence
  std::size_t num_components = 0;
  std::vector<bool> forced;            // in the seed's component
};

/// Components of the distance-d graph; the seed's component is forced to
/// the seed colour when two-point rainbow copies are forbidden.
ComponentColoring flood_fill_two_point(const Configuration& points, std::size_t seed_index,
                                       double d, const Tolerance& tol = {});

struct SlabSummary {
  double coordinate = 0.0;
  std::size_t points = 0;
  std::vector<std::size_t> by_cardinality;  // index = |allowed|
};

struct ForcingReport {
  std::size_t points = 0;
  int r = 0;
  int rounds = 0;
  bool contradiction = false;
  std::vector<std::size_t> by_cardinality;  // index 0..r
  double singleton_fraction = 0.0;
  double full_fraction = 0.0;
  std::size_t slab_axis = 0;
  std::vector<SlabSummary> slabs;  // sorted by coordinate
};

ForcingReport forcing_report(const PropagationInstance& inst, const PropagationResult& res,
                             std::size_t slab_axis = 0, const Tolerance& tol = {});

// Exact-copy instance builders.

/// Integer lattice points of the box [lo_i, hi_i] scaled by `spacing`.
Configuration lattice_box(const std::vector<std::pair<int, int>>& ranges, double spacing = 1.0);

/// Right triangle with legs a (along e1) and b (along e2): (0,0),(a,0),(0,b).
Configuration right_triangle(double a, double b, std::size_t dim = 2);

/// Two points at distance d.
Configuration segment(double d, std::size_t dim = 1);

/// Points 0, s, 2s, ... on a line in the plane plus, for each consecutive
/// pair, the point on their perpendicular bisector at distance d from both.
/// Requires 0 < s <= 2d.
Configuration bisector_chain(std::size_t steps, double d, double spacing);

}  // namespace egr
