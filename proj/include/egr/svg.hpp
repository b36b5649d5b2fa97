#pragma once

// SVG raster of a 2-D slice of a colouring, sampled at pixel centres, with
// optional polygon overlays in world coordinates.

#include <string>
#include <vector>

#include "egr/colorings.hpp"

namespace egr {

struct RenderWindow {
  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
};

struct RenderOptions {
  RenderWindow window;
  double pixels_per_unit = 20.0;
  std::vector<std::string> palette;  // empty: built-in palette
  /// Extra coordinates appended to each sample so rules on E^n (n > 2) can
  /// be sliced.
  std::vector<double> slice_tail;
};

const std::vector<std::string>& default_palette();

/// Byte-identical output for identical inputs.
std::string render_svg(const ColoringRule& rule, const RenderOptions& opts,
                       const std::vector<std::vector<Point>>& overlays = {});

}  // namespace egr
