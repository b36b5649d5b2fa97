#pragma once

// Set partitions as restricted-growth strings (RGS): rgs[0] = 0 and
// rgs[i] <= 1 + max(rgs[0..i-1]). One RGS per colouring up to relabelling.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace egr {

inline constexpr int kMaxPartitionSize = 14;

class SetPartition {
 public:
  SetPartition() = default;
  /// Throws unless `rgs` is a restricted-growth string.
  explicit SetPartition(std::vector<std::uint8_t> rgs);

  /// Canonical partition induced by arbitrary colour labels.
  template <class T>
  static SetPartition from_labels(std::span<const T> labels) {
    std::vector<std::uint8_t> rgs;
    std::vector<T> seen;
    for (const T& l : labels) {
      std::size_t k = 0;
      while (k < seen.size() && !(seen[k] == l)) ++k;
      if (k == seen.size()) seen.push_back(l);
      rgs.push_back(static_cast<std::uint8_t>(k));
    }
    return SetPartition(std::move(rgs));
  }

  static bool is_rgs(std::span<const std::uint8_t> rgs);

  const std::vector<std::uint8_t>& rgs() const { return rgs_; }
  std::size_t size() const { return rgs_.size(); }
  int num_blocks() const;

  friend bool operator==(const SetPartition&, const SetPartition&) = default;

 private:
  std::vector<std::uint8_t> rgs_;
};

/// Lexicographic enumeration of all partitions of {0..n-1} whose RGS starts
/// with `prefix`.
class PartitionEnumerator {
 public:
  explicit PartitionEnumerator(int n, std::vector<std::uint8_t> prefix = {});

  const std::vector<std::uint8_t>& current() const { return rgs_; }
  bool done() const { return done_; }
  /// Advances; returns false once exhausted.
  bool next();

 private:
  std::vector<std::uint8_t> rgs_;
  std::vector<std::uint8_t> prefix_max_;  // max of rgs_[0..i]
  std::size_t fixed_;
  bool done_ = false;
};

void for_each_partition(int n,
                        const std::function<void(std::span<const std::uint8_t>)>& fn);

/// Every RGS of length `len`, used as shard keys for parallel enumeration.
std::vector<std::vector<std::uint8_t>> rgs_prefixes(int len);

std::uint64_t count_partitions(int n);

}  // namespace egr
