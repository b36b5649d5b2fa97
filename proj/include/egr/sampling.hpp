#pragma once

// Randomised search for monochromatic / rainbow congruent copies of a
// pattern under a closed-form colouring. A clean report is evidence, not
// proof.

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "egr/colorings.hpp"

namespace egr {

enum class PatternKind { Monochromatic, Rainbow };

std::string_view to_string(PatternKind k);

/// Axis-aligned box of translations.
struct Region {
  std::vector<std::pair<double, double>> bounds;

  /// "x0,x1;y0,y1;..."
  static Region parse(std::string_view text);
  static Region cube(std::size_t dim, double lo, double hi);
  std::size_t dim() const { return bounds.size(); }
};

struct SamplerOptions {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
  Tolerance tol;
};

struct Witness {
  Configuration placed;
  std::vector<ColorId> colors;
  std::uint64_t trial = 0;
};

struct ViolationReport {
  ColoringRule rule;
  PatternKind kind;
  Configuration pattern;
  std::uint64_t trials_run = 0;
  std::uint64_t seed = 0;
  std::optional<Witness> witness;

  bool clean() const { return !witness.has_value(); }
};

/// Haar-distributed element of O(n): QR of a Gaussian matrix with the sign
/// of R's diagonal folded into Q.
Eigen::MatrixXd random_orthogonal(Eigen::Index n, std::mt19937_64& rng);

/// Generator for trial `trial`; independent of scheduling.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Random congruent copy of `pattern` (zero-padded to the region's
/// dimension), rotated uniformly and translated uniformly in `region`.
Configuration random_placement(const Configuration& pattern, const Region& region,
                               std::mt19937_64& rng);

bool is_monochromatic(std::span<const ColorId> colors);
bool is_rainbow(std::span<const ColorId> colors);

ViolationReport verify_no_mono(const ColoringRule& rule, const Configuration& x,
                               const Region& region, const SamplerOptions& opts = {});
ViolationReport verify_no_rainbow(const ColoringRule& rule, const Configuration& p,
                                  const Region& region, const SamplerOptions& opts = {});

/// Independently re-checks a witness: congruent to the pattern and
/// satisfying the colour predicate under the rule. Clean reports pass.
bool recheck(const ViolationReport& report, const Tolerance& tol = {});

}  // namespace egr
