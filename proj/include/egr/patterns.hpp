#pragma once

// Monochromatic and rainbow copies of a configuration inside an explicitly
// coloured finite point set.

#include <variant>
#include <vector>

#include "egr/colorings.hpp"
#include "egr/geometry.hpp"

namespace egr {

struct ColoredPointSet {
  Configuration points;
  std::vector<ColorId> colors;  // parallel to points

  ColoredPointSet(Configuration pts, std::vector<ColorId> cols);
  std::size_t distinct_colors() const;
};

std::vector<Match> find_mono(const ColoredPointSet& s, const Configuration& x,
                             const Tolerance& tol = {});
std::vector<Match> find_rainbow(const ColoredPointSet& s, const Configuration& p,
                                const Tolerance& tol = {});

struct MonoFound {
  Match match;
};
struct RainbowFound {
  Match match;
};
struct Neither {};
using GallaiVerdict = std::variant<MonoFound, RainbowFound, Neither>;

/// First monochromatic copy of `x`, else first rainbow copy of `p`, else
/// Neither (the finite set is then a counterexample certificate).
GallaiVerdict gallai_check(const ColoredPointSet& s, const Configuration& x,
                           const Configuration& p, const Tolerance& tol = {});

}  // namespace egr
