#include "egr/svg.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace egr {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& default_palette() {
  static const std::vector<std::string> palette = {
      "#e6194b", "#3cb44b", "#4363d8", "#ffe119", "#f58231", "#911eb4",
      "#46f0f0", "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff"};
  return palette;
}

std::string render_svg(const ColoringRule& rule, const RenderOptions& opts,
                       const std::vector<std::vector<Point>>& overlays) {
  const auto& w = opts.window;
  if (!(w.x1 > w.x0) || !(w.y1 > w.y0)) throw std::invalid_argument("empty render window");
  if (!(opts.pixels_per_unit > 0)) throw std::invalid_argument("pixels per unit must be > 0");
  const auto& palette = opts.palette.empty() ? default_palette() : opts.palette;
  const long cols = std::lround((w.x1 - w.x0) * opts.pixels_per_unit);
  const long rows = std::lround((w.y1 - w.y0) * opts.pixels_per_unit);
  if (cols < 1 || rows < 1 || cols * rows > 16'000'000)
    throw std::invalid_argument("render resolution out of range");
  const double px = (w.x1 - w.x0) / static_cast<double>(cols);
  const double py = (w.y1 - w.y0) / static_cast<double>(rows);

  auto sample = [&](long c, long r) {
    std::vector<double> coords{w.x0 + (static_cast<double>(c) + 0.5) * px,
                               w.y1 - (static_cast<double>(r) + 0.5) * py};
    coords.insert(coords.end(), opts.slice_tail.begin(), opts.slice_tail.end());
    return rule.color(Point(std::move(coords)));
  };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(cols) + "\" height=\"" + std::to_string(rows) + "\" viewBox=\"0 0 " +
         std::to_string(cols) + " " + std::to_string(rows) + "\" shape-rendering=\"crispEdges\">\n";
  out += "  <!-- rule: " + rule.name() + "; window x [" + num(w.x0) + ", " + num(w.x1) +
         "], y [" + num(w.y0) + ", " + num(w.y1) + "] -->\n";
  out += "  <g id=\"coloring\">\n";
  // One rect per horizontal run of equal colour.
  for (long r = 0; r < rows; ++r) {
    long start = 0;
    ColorId run = sample(0, r);
    for (long c = 1; c <= cols; ++c) {
      const bool end = c == cols;
      const ColorId next = end ? run : sample(c, r);
      if (end || next != run) {
        out += "    <rect x=\"" + std::to_string(start) + "\" y=\"" + std::to_string(r) +
               "\" width=\"" + std::to_string(c - start) + "\" height=\"1\" fill=\"" +
               palette[run % palette.size()] + "\"/>\n";
        start = c;
        run = next;
      }
    }
  }
  out += "  </g>\n";
  if (!overlays.empty()) {
    out += "  <g id=\"overlays\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\">\n";
    for (const auto& poly : overlays) {
      out += "    <polygon points=\"";
      for (std::size_t i = 0; i < poly.size(); ++i) {
        if (poly[i].dim() < 2) throw std::invalid_argument("overlay points must be 2-D");
        if (i) out += ' ';
        out += num((poly[i][0] - w.x0) / px) + "," + num((w.y1 - poly[i][1]) / py);
      }
      out += "\"/>\n";
    }
    out += "  </g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace egr
