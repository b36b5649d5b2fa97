#include "egr/triples.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>

namespace egr {

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
      throw std::invalid_argument("bad rational '" + std::string(text) + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

Rational rabs(const Rational& r) { return r < 0 ? -r : r; }

}  // namespace

bool is_potential_triple(const PotentialTriple<Rational>& t) {
  if (t.y1 < 0 || t.y2 < 0 || t.y3 < 0) return false;
  if (t.y1 + t.y3 != 2 * t.y2 + 2) return false;
  const Rational m = std::max({rabs(t.y1 - t.y2), rabs(t.y2 - t.y3), Rational(1)});
  return t.y2 >= 4 * m * m;
}

bool is_potential_triple(const PotentialTriple<double>& t, const Tolerance& tol) {
  if (t.y1 < 0 || t.y2 < 0 || t.y3 < 0) return false;
  if (!tol.match(t.y1 + t.y3, 2 * t.y2 + 2)) return false;
  const double m = std::max({std::abs(t.y1 - t.y2), std::abs(t.y2 - t.y3), 1.0});
  return std::sqrt(t.y2) >= 2 * m - tol.abs_eps;
}

Configuration realize_triple(const PotentialTriple<double>& t, std::size_t dim) {
  if (!is_potential_triple(t)) throw std::invalid_argument("triple is not potential");
  if (dim < 2) throw std::invalid_argument("realize_triple needs dimension >= 2");
  const double r = std::sqrt(t.y2);
  const double cos_a = (t.y2 + 1 - t.y1) / (2 * r);
  const double sin_a = std::sqrt(std::max(0.0, 1 - cos_a * cos_a));
  auto make = [&](double x, double y) {
    std::vector<double> c(dim, 0.0);
    c[0] = x;
    c[1] = y;
    return Point(std::move(c));
  };
  return Configuration({make(r - cos_a, sin_a), make(r, 0.0), make(r + cos_a, -sin_a)}, "l3");
}

TripleCSP build_triple_csp(std::vector<Rational> offsets) {
  std::sort(offsets.begin(), offsets.end());
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
  TripleCSP csp;
  csp.ground = std::move(offsets);
  std::map<Rational, std::size_t> index;
  for (std::size_t i = 0; i < csp.ground.size(); ++i) index[csp.ground[i]] = i;
  for (std::size_t lo = 0; lo < csp.ground.size(); ++lo)
    for (std::size_t mid = 0; mid < csp.ground.size(); ++mid) {
      const Rational hi_value = 2 * csp.ground[mid] + 2 - csp.ground[lo];
      const auto it = index.find(hi_value);
      if (it == index.end() || it->second < lo) continue;
      csp.constraints.push_back({lo, mid, it->second});
    }
  return csp;
}

std::int64_t sufficient_n(const TripleCSP& csp) {
  if (csp.ground.empty()) return 0;
  // sqrt(N + o2) >= 2 M  <=>  N >= 4 M^2 - o2
  Rational need = -csp.ground.front();
  for (const auto& c : csp.constraints) {
    const Rational& o2 = csp.ground[c.middle];
    const Rational m = std::max({rabs(csp.ground[c.outer_lo] - o2),
                                 rabs(csp.ground[c.outer_hi] - o2), Rational(1)});
    need = std::max(need, 4 * m * m - o2);
  }
  auto n = static_cast<std::int64_t>(std::floor(boost::rational_cast<double>(need)));
  while (Rational(n) < need) ++n;
  return n;
}

std::vector<Rational> builtin_proof_offsets() {
  std::vector<Rational> out;
  for (std::int64_t k = 0; k <= 6; ++k)
    for (std::int64_t j = 0; j < 3; ++j) out.push_back(Rational(k) + Rational(j, 3));
  out.push_back(Rational(1, 2));
  std::sort(out.begin(), out.end());
  return out;
}

bool satisfies(const TripleCSP& csp, std::span<const std::uint8_t> colors) {
  for (const auto& c : csp.constraints) {
    const auto a = colors[c.outer_lo], b = colors[c.middle], d = colors[c.outer_hi];
    if (c.outer_lo == c.outer_hi) {
      if (a == b) return false;
      continue;
    }
    const bool mono = a == b && b == d;
    const bool rainbow = a != b && b != d && a != d;
    if (mono || rainbow) return false;
  }
  return true;
}

namespace {

using Mask = std::uint64_t;

class TripleSolver {
 public:
  explicit TripleSolver(const TripleCSP& csp) : csp_(csp), n_(csp.ground.size()) {
    if (n_ > 64) throw std::invalid_argument("triple CSP supports at most 64 points");
    watchers_.resize(n_);
    for (std::size_t k = 0; k < csp.constraints.size(); ++k) {
      const auto& c = csp.constraints[k];
      watchers_[c.outer_lo].push_back(k);
      watchers_[c.middle].push_back(k);
      if (c.outer_hi != c.outer_lo) watchers_[c.outer_hi].push_back(k);
    }
  }

  CspResult solve() {
    CspResult res;
    if (n_ == 0) {
      res.sat = true;
      res.witness = SetPartition{};
      return res;
    }
    const Mask full = n_ == 64 ? ~Mask{0} : ((Mask{1} << n_) - 1);
    std::vector<Mask> domains(n_, full);
    std::vector<std::uint8_t> colors(n_, 0);
    if (propagate(domains, all_constraints()) && search(domains, colors, 0, 0, res.nodes)) {
      res.sat = true;
      res.witness = SetPartition(colors);
    }
    return res;
  }

 private:
  std::vector<std::size_t> all_constraints() const {
    std::vector<std::size_t> all(csp_.constraints.size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    return all;
  }

  // Values of `x` with a supporting assignment of y, z: exactly two equal.
  static Mask supported(Mask x, Mask y, Mask z) {
    Mask keep = 0;
    for (Mask rest = x; rest; rest &= rest - 1) {
      const Mask bit = rest & -rest;
      const bool ok = ((y & bit) && (z & ~bit)) || ((z & bit) && (y & ~bit)) ||
                      ((y & z) & ~bit);
      if (ok) keep |= bit;
    }
    return keep;
  }

  bool revise(std::size_t k, std::vector<Mask>& d, std::vector<std::size_t>& changed) const {
    const auto& c = csp_.constraints[k];
    auto update = [&](std::size_t v, Mask m) {
      if (m == d[v]) return true;
      d[v] = m;
      changed.push_back(v);
      return m != 0;
    };
    if (c.outer_lo == c.outer_hi) {
      const std::size_t a = c.outer_lo, b = c.middle;
      if (std::has_single_bit(d[b]) && !update(a, d[a] & ~d[b])) return false;
      if (std::has_single_bit(d[a]) && !update(b, d[b] & ~d[a])) return false;
      return true;
    }
    const std::size_t v[3] = {c.outer_lo, c.middle, c.outer_hi};
    for (int i = 0; i < 3; ++i) {
      const std::size_t x = v[i], y = v[(i + 1) % 3], z = v[(i + 2) % 3];
      if (!update(x, supported(d[x], d[y], d[z]))) return false;
    }
    return true;
  }

  bool propagate(std::vector<Mask>& d, std::vector<std::size_t> queue) const {
    std::vector<bool> queued(csp_.constraints.size(), false);
    std::deque<std::size_t> work;
    for (auto k : queue)
      if (!queued[k]) {
        queued[k] = true;
        work.push_back(k);
      }
    std::vector<std::size_t> changed;
    while (!work.empty()) {
      const std::size_t k = work.front();
      work.pop_front();
      queued[k] = false;
      changed.clear();
      if (!revise(k, d, changed)) return false;
      for (auto v : changed)
        for (auto w : watchers_[v])
          if (!queued[w]) {
            queued[w] = true;
            work.push_back(w);
          }
    }
    return true;
  }

  // Canonical colourings: point v takes a used colour or the next fresh one.
  bool search(const std::vector<Mask>& d, std::vector<std::uint8_t>& colors,
              std::size_t v, std::size_t used, std::uint64_t& nodes) const {
    if (v == n_) return true;
    for (std::size_t c = 0; c <= used && c < 64; ++c) {
      const Mask bit = Mask{1} << c;
      if (!(d[v] & bit)) continue;
      ++nodes;
      std::vector<Mask> next = d;
      next[v] = bit;
      colors[v] = static_cast<std::uint8_t>(c);
      if (propagate(next, watchers_[v]) &&
          search(next, colors, v + 1, c == used ? used + 1 : used, nodes))
        return true;
    }
    return false;
  }

  const TripleCSP& csp_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> watchers_;
};

}  // namespace

CspResult solve_triple_csp(const TripleCSP& csp) { return TripleSolver(csp).solve(); }

}  // namespace egr
