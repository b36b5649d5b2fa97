#include "egr/patterns.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "egr/congruence.hpp"

namespace egr {

ColoredPointSet::ColoredPointSet(Configuration pts, std::vector<ColorId> cols)
    : points(std::move(pts)), colors(std::move(cols)) {
  if (points.size() != colors.size())
    throw std::invalid_argument("colours must be parallel to points");
}

std::size_t ColoredPointSet::distinct_colors() const {
  return std::set<ColorId>(colors.begin(), colors.end()).size();
}

std::vector<Match> find_mono(const ColoredPointSet& s, const Configuration& x,
                             const Tolerance& tol) {
  // A monochromatic copy lives inside one colour class.
  std::map<ColorId, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < s.colors.size(); ++i) classes[s.colors[i]].push_back(i);
  const CongruenceSearch search(s.points, x, tol);
  std::vector<Match> out;
  for (const auto& [color, members] : classes) {
    if (members.size() < x.size()) continue;
    auto found = search.run(members);
    out.insert(out.end(), std::make_move_iterator(found.begin()),
               std::make_move_iterator(found.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Match> find_rainbow(const ColoredPointSet& s, const Configuration& p,
                                const Tolerance& tol) {
  if (s.distinct_colors() < p.size()) return {};
  const CongruenceSearch search(s.points, p, tol);
  return search.run({}, [&](std::span<const std::size_t> partial) {
    const ColorId last = s.colors[partial.back()];
    for (std::size_t i = 0; i + 1 < partial.size(); ++i)
      if (s.colors[partial[i]] == last) return false;
    return true;
  });
}

GallaiVerdict gallai_check(const ColoredPointSet& s, const Configuration& x,
                           const Configuration& p, const Tolerance& tol) {
  if (s.points.size() >= x.size()) {
    auto mono = find_mono(s, x, tol);
    if (!mono.empty()) return MonoFound{std::move(mono.front())};
  }
  if (s.points.size() >= p.size()) {
    auto rainbow = find_rainbow(s, p, tol);
    if (!rainbow.empty()) return RainbowFound{std::move(rainbow.front())};
  }
  return Neither{};
}

}  // namespace egr
