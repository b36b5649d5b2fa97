#include "egr/q5_lemma.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace egr {

namespace {

// Twice-squared distances {2,2,2,2,4,4} with the two long pairs disjoint.
std::optional<IndexSquare> as_square(const std::vector<ExactHammingPoint>& pts,
                                     const std::array<std::size_t, 4>& q) {
  std::vector<IndexPair> longs;
  int shorts = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const int d = twice_squared_distance(pts[q[i]], pts[q[j]]);
      if (d == 2)
        ++shorts;
      else if (d == 4)
        longs.push_back({q[i], q[j]});
      else
        return std::nullopt;
    }
  if (shorts != 4 || longs.size() != 2) return std::nullopt;
  const auto [a, c] = longs[0];
  const auto [b, d] = longs[1];
  if (a == b || a == d || c == b || c == d) return std::nullopt;
  return IndexSquare{a, b, c, d};
}

}  // namespace

Q5Ground q5_ground(std::vector<ExactHammingPoint> points) {
  Q5Ground g;
  g.points = std::move(points);
  const std::size_t n = g.points.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (twice_squared_distance(g.points[i], g.points[j]) == 2) g.unit_pairs.push_back({i, j});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d)
          if (auto sq = as_square(g.points, {a, b, c, d})) g.unit_squares.push_back(*sq);
  return g;
}

std::vector<std::array<ExactHammingPoint, 4>> q5_unit_squares() {
  const auto g = q5_ground(q5_layer(3));
  std::vector<std::array<ExactHammingPoint, 4>> out;
  for (const auto& s : g.unit_squares)
    out.push_back({g.points[s[0]], g.points[s[1]], g.points[s[2]], g.points[s[3]]});
  return out;
}

Q5Classification classify(const Q5Ground& g, std::span<const std::uint8_t> colors) {
  for (const auto& [i, j] : g.unit_pairs)
    if (colors[i] == colors[j]) return {Q5Case::MonoPair, {i, j}};
  for (const auto& s : g.unit_squares) {
    const std::array<std::uint8_t, 4> c{colors[s[0]], colors[s[1]], colors[s[2]], colors[s[3]]};
    bool rainbow = true;
    for (int x = 0; x < 4 && rainbow; ++x)
      for (int y = x + 1; y < 4 && rainbow; ++y) rainbow = c[x] != c[y];
    if (rainbow) {
      std::vector<std::size_t> w(s.begin(), s.end());
      std::sort(w.begin(), w.end());
      return {Q5Case::RainbowSquare, std::move(w)};
    }
  }
  return {};
}

Q5LemmaReport verify_q5_lemma(unsigned threads) {
  const Q5Ground g = q5_ground(q5_layer(3));
  const int n = static_cast<int>(g.points.size());
  constexpr int kShardDepth = 4;  // Bell(4) = 15 shards

  auto run_shard = [&](std::vector<std::uint8_t> prefix) {
    Q5LemmaReport r;
    PartitionEnumerator e(n, std::move(prefix));
    do {
      ++r.partitions_checked;
      switch (classify(g, e.current()).which) {
        case Q5Case::MonoPair: ++r.case1_hits; break;
        case Q5Case::RainbowSquare: ++r.case2_hits; break;
        case Q5Case::Neither: r.counterexamples.emplace_back(e.current()); break;
      }
    } while (e.next());
    return r;
  };

  Q5LemmaReport total;
  auto merge = [&](Q5LemmaReport r) {
    total.partitions_checked += r.partitions_checked;
    total.case1_hits += r.case1_hits;
    total.case2_hits += r.case2_hits;
    for (auto& c : r.counterexamples) total.counterexamples.push_back(std::move(c));
  };
  const auto shards = rgs_prefixes(kShardDepth);
  if (threads <= 1) {
    for (const auto& p : shards) merge(run_shard(p));
  } else {
    // Shards are merged in prefix order, so output order is deterministic.
    std::vector<std::future<Q5LemmaReport>> pending;
    for (const auto& p : shards) pending.push_back(std::async(std::launch::async, run_shard, p));
    for (auto& f : pending) merge(f.get());
  }
  return total;
}

Q5LemmaReport verify_q5_full() {
  std::vector<ExactHammingPoint> order = q5_layer(3);
  for (const auto& p : q5_points())
    if (p.weight() != 3) order.push_back(p);
  const Q5Ground g = q5_ground(order);
  const std::size_t n = g.points.size();

  // Constraints grouped by the vertex assigned last.
  std::vector<std::vector<std::size_t>> earlier_neighbours(n);
  for (const auto& [i, j] : g.unit_pairs) earlier_neighbours[std::max(i, j)].push_back(std::min(i, j));
  std::vector<std::vector<IndexSquare>> closing_squares(n);
  for (const auto& s : g.unit_squares)
    closing_squares[*std::max_element(s.begin(), s.end())].push_back(s);

  Q5LemmaReport report;
  report.full_q5 = true;
  std::vector<std::uint8_t> colors(n, 0);

  auto assign = [&](auto&& self, std::size_t v, std::uint8_t used) -> void {
    ++report.nodes;
    if (v == n) {
      report.counterexamples.emplace_back(colors);
      return;
    }
    for (std::uint8_t c = 0; c <= used && c < 255; ++c) {
      colors[v] = c;
      bool mono = false;
      for (std::size_t u : earlier_neighbours[v]) mono = mono || colors[u] == c;
      if (mono) {
        ++report.case1_hits;
        continue;
      }
      bool rainbow = false;
      for (const auto& s : closing_squares[v]) {
        const std::array<std::uint8_t, 4> q{colors[s[0]], colors[s[1]], colors[s[2]], colors[s[3]]};
        bool distinct = true;
        for (int x = 0; x < 4 && distinct; ++x)
          for (int y = x + 1; y < 4 && distinct; ++y) distinct = q[x] != q[y];
        rainbow = rainbow || distinct;
      }
      if (rainbow) {
        ++report.case2_hits;
        continue;
      }
      self(self, v + 1, static_cast<std::uint8_t>(c == used ? used + 1 : used));
    }
  };
  assign(assign, 0, 0);
  return report;
}

}  // namespace egr
