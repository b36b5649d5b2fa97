#pragma once

#include <functional>
#include <span>
#include <vector>

#include "egr/geometry.hpp"

namespace egr {

/// Backtracking search for copies of a needle inside a haystack, with an
/// optional prefilter on partial assignments. Used directly by the pattern
/// finders so that colour predicates prune the search tree.
class CongruenceSearch {
 public:
  /// Returns false to reject a partial assignment (and every extension).
  using PartialFilter = std::function<bool(std::span<const std::size_t>)>;

  CongruenceSearch(const Configuration& haystack, const Configuration& needle,
                   const Tolerance& tol = {});

  /// Searches among `candidates` (all haystack points when empty).
  std::vector<Match> run(std::span<const std::size_t> candidates = {},
                         const PartialFilter& filter = {}) const;

  const std::vector<std::size_t>& needle_order() const { return order_; }

 private:
  bool dist_match(std::size_t h1, std::size_t h2, std::size_t n1,
                  std::size_t n2) const;

  const Configuration& haystack_;
  const Configuration& needle_;
  Tolerance tol_;
  Eigen::MatrixXd hay_dist_;
  Eigen::MatrixXd needle_dist_;
  std::vector<std::size_t> order_;
};

}  // namespace egr
