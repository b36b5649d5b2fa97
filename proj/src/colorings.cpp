#include "egr/colorings.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace egr {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Block index i with p in [(i-1)a, ia).
long long block_index(double x, double a) {
  return static_cast<long long>(std::floor(x / a)) + 1;
}

int residue(long long i, int n) {
  const long long r = i % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace

ColoringRule::ColoringRule(Variant v) : rule_(std::move(v)) {
  std::visit(overloaded{
                 [](const BlockRule& r) {
                   if (!(r.a > 0.0)) throw std::invalid_argument("Block: a must be > 0");
                   if (r.num_colors < 1) throw std::invalid_argument("Block: num_colors must be >= 1");
                 },
                 [](const GridBlockRule& r) {
                   if (!(r.h > 0.0)) throw std::invalid_argument("GridBlock: h must be > 0");
                   if (r.colors_per_axis < 1)
                     throw std::invalid_argument("GridBlock: colors_per_axis must be >= 1");
                   if (r.num_axes < 1) throw std::invalid_argument("GridBlock: num_axes must be >= 1");
                 },
                 [](const SphericalFloorModRule& r) {
                   if (r.m < 1) throw std::invalid_argument("SphericalFloorMod: m must be >= 1");
                 },
                 [](const ConstantRule&) {},
                 [](const TableRule& r) {
                   for (const auto& e : r.entries)
                     if (e.first.dim() != r.entries.front().first.dim())
                       throw std::invalid_argument("Table: entries differ in dimension");
                 },
             },
             rule_);
}

ColorId ColoringRule::color(const Point& p) const {
  return std::visit(
      overloaded{
          [&](const BlockRule& r) { return block_color(p, r.a, r.num_colors); },
          [&](const GridBlockRule& r) {
            return grid_block_color(p, r.h, r.colors_per_axis, r.num_axes);
          },
          [&](const SphericalFloorModRule& r) { return spherical_floor_mod_color(p, r.m); },
          [&](const ConstantRule& r) { return r.color; },
          [&](const TableRule& r) {
            for (const auto& [q, c] : r.entries)
              if (q.dim() == p.dim() && r.tol.match(distance(p, q), 0.0)) return c;
            return r.fallback;
          },
      },
      rule_);
}

std::string ColoringRule::name() const {
  return std::visit(overloaded{
                        [](const BlockRule&) { return std::string("Block"); },
                        [](const GridBlockRule&) { return std::string("GridBlock"); },
                        [](const SphericalFloorModRule&) { return std::string("SphericalFloorMod"); },
                        [](const ConstantRule&) { return std::string("Constant"); },
                        [](const TableRule&) { return std::string("Table"); },
                    },
                    rule_);
}

ColorId block_color(const Point& p, double a, int num_colors) {
  if (!(a > 0.0) || num_colors < 1) throw std::invalid_argument("block_color: bad parameters");
  return static_cast<ColorId>(residue(block_index(p[0], a), num_colors));
}

std::vector<int> grid_block_tuple(const Point& p, double h, int colors_per_axis,
                                  int num_axes) {
  if (!(h > 0.0) || colors_per_axis < 1 || num_axes < 1)
    throw std::invalid_argument("grid_block_tuple: bad parameters");
  if (static_cast<std::size_t>(num_axes) > p.dim())
    throw std::invalid_argument("grid_block_tuple: more axes than coordinates");
  std::vector<int> t(static_cast<std::size_t>(num_axes));
  for (std::size_t s = 0; s < t.size(); ++s)
    t[s] = residue(block_index(p[s], h), colors_per_axis);
  return t;
}

ColorId flatten_color_tuple(std::span<const int> tuple, int radix) {
  ColorId id = 0;
  for (int j : tuple) id = id * static_cast<ColorId>(radix) + static_cast<ColorId>(j);
  return id;
}

std::vector<int> unflatten_color(ColorId id, int radix, int num_axes) {
  std::vector<int> t(static_cast<std::size_t>(num_axes));
  for (std::size_t s = t.size(); s-- > 0;) {
    t[s] = static_cast<int>(id % static_cast<ColorId>(radix));
    id /= static_cast<ColorId>(radix);
  }
  return t;
}

ColorId grid_block_color(const Point& p, double h, int colors_per_axis, int num_axes) {
  const auto t = grid_block_tuple(p, h, colors_per_axis, num_axes);
  return flatten_color_tuple(t, colors_per_axis);
}

ColorId spherical_floor_mod_color(const Point& p, int m) {
  if (m < 1) throw std::invalid_argument("spherical_floor_mod_color: m must be >= 1");
  const auto k = static_cast<long long>(std::floor(p.squared_norm()));
  return static_cast<ColorId>(residue(k, m));
}

bool is_spherical_rule(const ColoringRule& rule) {
  return std::visit(
      overloaded{
          [](const BlockRule&) { return false; },
          [](const GridBlockRule&) { return false; },
          [](const SphericalFloorModRule&) { return true; },
          [](const ConstantRule&) { return true; },
          [](const TableRule& r) {
            // Bucket entries by radius; every bucket must be single-coloured.
            std::vector<std::pair<double, ColorId>> radii;
            for (const auto& [q, c] : r.entries) radii.emplace_back(std::sqrt(q.squared_norm()), c);
            std::sort(radii.begin(), radii.end());
            for (std::size_t i = 0; i < radii.size(); ++i)
              for (std::size_t j = i + 1; j < radii.size() && r.tol.match(radii[i].first, radii[j].first); ++j)
                if (radii[i].second != radii[j].second) return false;
            return true;
          },
      },
      rule.variant());
}

BlockParameters block_parameters(const Configuration& x, const SearchOptions& opts) {
  BlockParameters bp;
  const auto w = box_width(x, opts);
  bp.a = w.width;
  bp.b = diameter(x);
  bp.width_exact = w.exact;
  if (!(bp.a > Tolerance{}.abs_eps))
    throw std::invalid_argument("configuration has zero box-width; use grid parameters");
  bp.num_colors = static_cast<int>(std::ceil(bp.b / bp.a - 1e-12)) + 1;
  return bp;
}

GridParameters grid_parameters(const Configuration& x, int ambient_dim,
                               const SearchOptions& opts) {
  const int m = affine_dimension(x);
  if (m >= ambient_dim)
    throw std::invalid_argument("affine dimension must be smaller than the ambient dimension");
  GridParameters gp;
  gp.num_axes = ambient_dim - m + 1;
  const Configuration lifted = x.padded(static_cast<std::size_t>(ambient_dim));
  gp.g_bound = projection_diameter(lifted, gp.num_axes, opts).bound;
  gp.h = gp.g_bound / std::sqrt(static_cast<double>(gp.num_axes));
  gp.b = diameter(x);
  gp.colors_per_axis = static_cast<int>(std::ceil(gp.b / gp.h - 1e-12)) + 1;
  return gp;
}

}  // namespace egr
