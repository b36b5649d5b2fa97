#pragma once

// Exhaustive check that every colouring of the weight-3 layer of Q5 has a
// monochromatic unit-distance pair (case 1) or a rainbow unit square
// (case 2). Exact mask arithmetic only.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "egr/hamming.hpp"
#include "egr/partitions.hpp"

namespace egr {

using IndexPair = std::array<std::size_t, 2>;
/// Vertices in cyclic order around the square.
using IndexSquare = std::array<std::size_t, 4>;

struct Q5Ground {
  std::vector<ExactHammingPoint> points;
  std::vector<IndexPair> unit_pairs;     // i < j
  std::vector<IndexSquare> unit_squares;
};

/// Unit pairs and unit squares of an arbitrary subset of Q5, by exact scan.
Q5Ground q5_ground(std::vector<ExactHammingPoint> points);

/// All unit squares inside the weight-3 layer, each as 4 points in cyclic order.
std::vector<std::array<ExactHammingPoint, 4>> q5_unit_squares();

enum class Q5Case { MonoPair = 1, RainbowSquare = 2, Neither = 0 };

struct Q5Classification {
  Q5Case which = Q5Case::Neither;
  std::vector<std::size_t> witness;  // ground indices
};

/// Case 1 takes precedence over case 2.
Q5Classification classify(const Q5Ground& g, std::span<const std::uint8_t> colors);

struct Q5LemmaReport {
  bool full_q5 = false;
  std::uint64_t partitions_checked = 0;
  std::uint64_t case1_hits = 0;
  std::uint64_t case2_hits = 0;
  /// Full-Q5 mode only: search nodes of the pruned backtracking.
  std::uint64_t nodes = 0;
  std::vector<SetPartition> counterexamples;
};

/// Every partition of the 10-point layer; shards by RGS prefix across threads.
Q5LemmaReport verify_q5_lemma(unsigned threads = 1);

/// Counterexample search over all 32 points of Q5, layer 3 ordered first so
/// the case 1 / case 2 prunes close branches early. In this mode the hit
/// counters count pruned subtrees, not partitions.
Q5LemmaReport verify_q5_full();

}  // namespace egr
