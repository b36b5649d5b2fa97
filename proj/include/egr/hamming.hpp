#pragma once

// Points of Q5 = (1/sqrt 2){0,1}^5 held as bit masks. Squared distances are
// half the symmetric-difference size, so all Q5 combinatorics is integral.

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "egr/geometry.hpp"

namespace egr {

class ExactHammingPoint {
 public:
  static constexpr int kLength = 5;

  constexpr ExactHammingPoint() = default;
  /// Bit i set <=> position i+1 is non-zero.
  explicit constexpr ExactHammingPoint(std::uint8_t mask) : mask_(mask & 0x1F) {}

  /// Parses position strings such as "135".
  static ExactHammingPoint parse(std::string_view positions);

  constexpr std::uint8_t mask() const { return mask_; }
  constexpr int weight() const { return std::popcount(mask_); }
  std::string to_string() const;
  Point to_point() const;

  /// Twice the squared Euclidean distance: the symmetric-difference size.
  friend constexpr int twice_squared_distance(ExactHammingPoint a, ExactHammingPoint b) {
    return std::popcount(static_cast<std::uint8_t>(a.mask_ ^ b.mask_));
  }

  friend constexpr bool operator==(ExactHammingPoint, ExactHammingPoint) = default;
  friend constexpr auto operator<=>(ExactHammingPoint, ExactHammingPoint) = default;

 private:
  std::uint8_t mask_ = 0;
};

/// All 32 points of Q5 in mask order.
std::vector<ExactHammingPoint> q5_points();
/// Points with exactly `weight` non-zero entries, lexicographic by position string.
std::vector<ExactHammingPoint> q5_layer(int weight);

Configuration to_configuration(const std::vector<ExactHammingPoint>& pts,
                               std::string label = {});

}  // namespace egr
