#pragma once

// Potential triples of squared norms and the "no monochromatic, no rainbow
// l3" constraint problem over a finite set of rational offsets from a large
// integer N. All arithmetic on offsets is exact.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "egr/geometry.hpp"
#include "egr/partitions.hpp"

namespace egr {

using Rational = boost::rational<std::int64_t>;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

/// Squared norms |x1|^2, |x2|^2, |x3|^2 of three collinear unit-spaced points.
template <class T>
struct PotentialTriple {
  T y1{}, y2{}, y3{};
};

/// Sufficient condition y1 + y3 = 2 y2 + 2 and sqrt(y2) >= 2 max(|y1-y2|, |y2-y3|, 1),
/// decided exactly (the root is squared away).
bool is_potential_triple(const PotentialTriple<Rational>& t);
/// Floating variant with a relative tolerance on the linear relation.
bool is_potential_triple(const PotentialTriple<double>& t, const Tolerance& tol = {});

/// x1 = (sqrt y2 - cos a, sin a), x2 = (sqrt y2, 0), x3 = (sqrt y2 + cos a, -sin a)
/// with cos a = (y2 + 1 - y1) / (2 sqrt y2). Throws if the triple is not potential.
Configuration realize_triple(const PotentialTriple<double>& t, std::size_t dim = 2);

/// Indices into the ground set; the value at `middle` plays y2 and
/// ground[outer_lo] <= ground[outer_hi]. When outer_lo == outer_hi the
/// constraint reduces to a disequality with the middle point.
struct TripleConstraint {
  std::size_t outer_lo = 0;
  std::size_t middle = 0;
  std::size_t outer_hi = 0;

  friend bool operator==(const TripleConstraint&, const TripleConstraint&) = default;
};

struct TripleCSP {
  std::vector<Rational> ground;  // sorted, distinct offsets
  std::vector<TripleConstraint> constraints;
};

/// Every (o1, o2, o3) from the offsets with o1 + o3 = 2 o2 + 2, up to
/// swapping o1 and o3.
TripleCSP build_triple_csp(std::vector<Rational> offsets);

/// Least integer N with N + o >= 0 for all offsets and the square-root side
/// condition holding for every constraint of the CSP.
std::int64_t sufficient_n(const TripleCSP& csp);

/// {k, k+1/3, k+2/3 : k = 0..6} together with 1/2.
std::vector<Rational> builtin_proof_offsets();

/// True when the colouring makes no constraint monochromatic or rainbow.
bool satisfies(const TripleCSP& csp, std::span<const std::uint8_t> colors);

struct CspResult {
  bool sat = false;
  std::optional<SetPartition> witness;
  std::uint64_t nodes = 0;
};

/// Backtracking over canonical colourings with forward propagation.
CspResult solve_triple_csp(const TripleCSP& csp);

}  // namespace egr
