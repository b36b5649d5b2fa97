#include "egr/congruence.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace egr {

namespace {

Eigen::MatrixXd distance_matrix(const Configuration& c) {
  const auto n = static_cast<Eigen::Index>(c.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      d(i, j) = d(j, i) = distance(c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(j)]);
  return d;
}

}  // namespace

CongruenceSearch::CongruenceSearch(const Configuration& haystack,
                                   const Configuration& needle,
                                   const Tolerance& tol)
    : haystack_(haystack), needle_(needle), tol_(tol),
      hay_dist_(distance_matrix(haystack)), needle_dist_(distance_matrix(needle)) {
  if (haystack.dim() != needle.dim())
    throw std::invalid_argument("haystack and needle differ in dimension");
  const std::size_t k = needle.size();
  if (k < 2) {
    order_.resize(k);
    std::iota(order_.begin(), order_.end(), 0);
    return;
  }
  // Start from the needle pair whose length is rarest among haystack pairs.
  const std::size_t n = haystack.size();
  std::size_t best_a = 0, best_b = 1, best_count = SIZE_MAX;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      std::size_t count = 0;
      const double target = needle_dist_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (tol_.match(hay_dist_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), target)) ++count;
      if (count < best_count) {
        best_count = count;
        best_a = a;
        best_b = b;
      }
    }
  order_ = {best_a, best_b};
  std::vector<bool> placed(k, false);
  placed[best_a] = placed[best_b] = true;
  for (std::size_t i = 0; i < k; ++i)
    if (!placed[i]) order_.push_back(i);
}

bool CongruenceSearch::dist_match(std::size_t h1, std::size_t h2,
                                  std::size_t n1, std::size_t n2) const {
  return tol_.match(hay_dist_(static_cast<Eigen::Index>(h1), static_cast<Eigen::Index>(h2)),
                    needle_dist_(static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(n2)));
}

std::vector<Match> CongruenceSearch::run(std::span<const std::size_t> candidates,
                                         const PartialFilter& filter) const {
  std::vector<std::size_t> pool;
  if (candidates.empty()) {
    pool.resize(haystack_.size());
    std::iota(pool.begin(), pool.end(), 0);
  } else {
    pool.assign(candidates.begin(), candidates.end());
  }
  const std::size_t k = needle_.size();
  std::map<std::vector<std::size_t>, Match> found;
  if (pool.size() < k || k == 0) return {};

  std::vector<std::size_t> chosen;  // haystack index per position of order_
  std::vector<bool> used(haystack_.size(), false);

  auto record = [&] {
    Match m;
    m.assignment.assign(k, 0);
    for (std::size_t pos = 0; pos < k; ++pos) m.assignment[order_[pos]] = chosen[pos];
    m.indices = chosen;
    std::sort(m.indices.begin(), m.indices.end());
    if (found.count(m.indices)) return;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        m.max_deviation = std::max(
            m.max_deviation,
            std::abs(hay_dist_(static_cast<Eigen::Index>(m.assignment[a]), static_cast<Eigen::Index>(m.assignment[b])) -
                     needle_dist_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))));
    found.emplace(m.indices, std::move(m));
  };

  auto extend = [&](auto&& self) -> void {
    const std::size_t pos = chosen.size();
    if (pos == k) {
      record();
      return;
    }
    const std::size_t np = order_[pos];
    for (std::size_t h : pool) {
      if (used[h]) continue;
      bool ok = true;
      for (std::size_t q = 0; q < pos && ok; ++q)
        ok = dist_match(chosen[q], h, order_[q], np);
      if (!ok) continue;
      chosen.push_back(h);
      if (!filter || filter(chosen)) {
        used[h] = true;
        self(self);
        used[h] = false;
      }
      chosen.pop_back();
    }
  };
  extend(extend);

  std::vector<Match> out;
  out.reserve(found.size());
  for (auto& [key, m] : found) out.push_back(std::move(m));
  return out;
}

std::vector<Match> congruent_copies(const Configuration& haystack,
                                    const Configuration& needle,
                                    const Tolerance& tol) {
  return CongruenceSearch(haystack, needle, tol).run();
}

}  // namespace egr
