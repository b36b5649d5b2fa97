#include "egr/hamming.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace egr {

ExactHammingPoint ExactHammingPoint::parse(std::string_view positions) {
  std::uint8_t mask = 0;
  for (char ch : positions) {
    if (ch < '1' || ch > '5')
      throw std::invalid_argument("Q5 position must be a digit 1..5, got '" +
                                  std::string(1, ch) + "'");
    const auto bit = static_cast<std::uint8_t>(1u << (ch - '1'));
    if (mask & bit) throw std::invalid_argument("repeated Q5 position");
    mask |= bit;
  }
  return ExactHammingPoint(mask);
}

std::string ExactHammingPoint::to_string() const {
  std::string s;
  for (int i = 0; i < kLength; ++i)
    if (mask_ & (1u << i)) s.push_back(static_cast<char>('1' + i));
  return s;
}

Point ExactHammingPoint::to_point() const {
  const double v = 1.0 / std::sqrt(2.0);
  std::vector<double> c(kLength, 0.0);
  for (int i = 0; i < kLength; ++i)
    if (mask_ & (1u << i)) c[static_cast<std::size_t>(i)] = v;
  return Point(std::move(c));
}

std::vector<ExactHammingPoint> q5_points() {
  std::vector<ExactHammingPoint> out;
  for (unsigned m = 0; m < 32; ++m) out.emplace_back(static_cast<std::uint8_t>(m));
  return out;
}

std::vector<ExactHammingPoint> q5_layer(int weight) {
  std::vector<ExactHammingPoint> out;
  for (const auto& p : q5_points())
    if (p.weight() == weight) out.push_back(p);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.to_string() < b.to_string();
  });
  return out;
}

Configuration to_configuration(const std::vector<ExactHammingPoint>& pts,
                               std::string label) {
  std::vector<Point> p;
  p.reserve(pts.size());
  for (const auto& h : pts) p.push_back(h.to_point());
  return Configuration(std::move(p), std::move(label));
}

}  // namespace egr
