#pragma once

// Closed-form colourings of E^n: half-open block stripes, grids of blocks,
// floor(|x|^2) mod m, constants and explicit tables.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "egr/geometry.hpp"

namespace egr {

using ColorId = std::uint64_t;

/// Stripes [(i-1)a, ia) x E^{n-1} coloured i mod num_colors.
struct BlockRule {
  double a = 1.0;
  int num_colors = 1;
};

/// Product of block stripes on the first num_axes coordinates; the colour
/// tuple is flattened in mixed radix, first axis most significant.
struct GridBlockRule {
  double h = 1.0;
  int colors_per_axis = 1;
  int num_axes = 1;
};

struct SphericalFloorModRule {
  int m = 1;
};

struct ConstantRule {
  ColorId color = 0;
};

/// Explicit point -> colour entries; points farther than the tolerance from
/// every entry receive `fallback`.
struct TableRule {
  std::vector<std::pair<Point, ColorId>> entries;
  ColorId fallback = 0;
  Tolerance tol;
};

class ColoringRule {
 public:
  using Variant = std::variant<BlockRule, GridBlockRule, SphericalFloorModRule,
                               ConstantRule, TableRule>;

  /// Validates parameters; throws std::invalid_argument.
  explicit ColoringRule(Variant v);

  static ColoringRule block(double a, int num_colors) { return ColoringRule(BlockRule{a, num_colors}); }
  static ColoringRule grid_block(double h, int colors_per_axis, int num_axes) {
    return ColoringRule(GridBlockRule{h, colors_per_axis, num_axes});
  }
  static ColoringRule spherical_floor_mod(int m) { return ColoringRule(SphericalFloorModRule{m}); }
  static ColoringRule constant(ColorId c = 0) { return ColoringRule(ConstantRule{c}); }

  ColorId color(const Point& p) const;
  const Variant& variant() const { return rule_; }
  std::string name() const;

 private:
  Variant rule_;
};

ColorId block_color(const Point& p, double a, int num_colors);
std::vector<int> grid_block_tuple(const Point& p, double h, int colors_per_axis,
                                  int num_axes);
ColorId grid_block_color(const Point& p, double h, int colors_per_axis, int num_axes);
ColorId flatten_color_tuple(std::span<const int> tuple, int radix);
std::vector<int> unflatten_color(ColorId id, int radix, int num_axes);
ColorId spherical_floor_mod_color(const Point& p, int m);

/// True when the colour depends only on the distance to the origin.
bool is_spherical_rule(const ColoringRule& rule);

/// ceil(b/a) + 1 for a configuration of diameter b and box-width a > 0: the
/// palette size that makes BlockRule(a, .) avoid monochromatic copies.
struct BlockParameters {
  double a = 0.0;
  double b = 0.0;
  int num_colors = 0;
  bool width_exact = false;
};
BlockParameters block_parameters(const Configuration& x, const SearchOptions& opts = {});

/// Grid parameters for a configuration of affine dimension m < n inside E^n:
/// h = g / sqrt(n-m+1) with g an upper bound on the least projection
/// diameter onto (n-m+1)-planes, and ceil(b/h)+1 colours per axis.
struct GridParameters {
  double h = 0.0;
  double g_bound = 0.0;
  double b = 0.0;
  int colors_per_axis = 0;
  int num_axes = 0;
};
GridParameters grid_parameters(const Configuration& x, int ambient_dim,
                               const SearchOptions& opts = {});

}  // namespace egr
