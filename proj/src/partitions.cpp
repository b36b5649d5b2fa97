#include "egr/partitions.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace egr {

SetPartition::SetPartition(std::vector<std::uint8_t> rgs) : rgs_(std::move(rgs)) {
  if (!is_rgs(rgs_)) throw std::invalid_argument("not a restricted-growth string");
}

bool SetPartition::is_rgs(std::span<const std::uint8_t> rgs) {
  int top = -1;
  for (auto v : rgs) {
    if (v > top + 1) return false;
    top = std::max(top, static_cast<int>(v));
  }
  return true;
}

int SetPartition::num_blocks() const {
  return rgs_.empty() ? 0 : *std::max_element(rgs_.begin(), rgs_.end()) + 1;
}

PartitionEnumerator::PartitionEnumerator(int n, std::vector<std::uint8_t> prefix)
    : rgs_(std::move(prefix)), fixed_(rgs_.size()) {
  if (n < 1 || n > kMaxPartitionSize)
    throw std::out_of_range("partition size must lie in [1, " +
                            std::to_string(kMaxPartitionSize) + "]");
  if (rgs_.size() > static_cast<std::size_t>(n) || !SetPartition::is_rgs(rgs_))
    throw std::invalid_argument("invalid RGS prefix");
  rgs_.resize(static_cast<std::size_t>(n), 0);
  prefix_max_.resize(rgs_.size());
  std::uint8_t top = 0;
  for (std::size_t i = 0; i < rgs_.size(); ++i) {
    top = std::max(top, rgs_[i]);
    prefix_max_[i] = top;
  }
}

bool PartitionEnumerator::next() {
  if (done_) return false;
  // Rightmost free position that can still grow.
  const std::size_t lo = std::max<std::size_t>(fixed_, 1);
  for (std::size_t i = rgs_.size(); i-- > lo;) {
    if (rgs_[i] <= prefix_max_[i - 1]) {
      ++rgs_[i];
      prefix_max_[i] = std::max(prefix_max_[i - 1], rgs_[i]);
      for (std::size_t j = i + 1; j < rgs_.size(); ++j) {
        rgs_[j] = 0;
        prefix_max_[j] = prefix_max_[i];
      }
      return true;
    }
  }
  done_ = true;
  return false;
}

void for_each_partition(int n,
                        const std::function<void(std::span<const std::uint8_t>)>& fn) {
  PartitionEnumerator e(n);
  do {
    fn(e.current());
  } while (e.next());
}

std::vector<std::vector<std::uint8_t>> rgs_prefixes(int len) {
  std::vector<std::vector<std::uint8_t>> out;
  if (len < 1) return {{}};
  for_each_partition(len, [&](std::span<const std::uint8_t> r) {
    out.emplace_back(r.begin(), r.end());
  });
  return out;
}

std::uint64_t count_partitions(int n) {
  std::uint64_t count = 0;
  PartitionEnumerator e(n);
  do {
    ++count;
  } while (e.next());
  return count;
}

}  // namespace egr
