#include "egr/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>

namespace egr {

std::string_view to_string(PatternKind k) {
  return k == PatternKind::Monochromatic ? "mono" : "rainbow";
}

Region Region::parse(std::string_view text) {
  Region r;
  std::string s(text);
  std::stringstream axes(s);
  std::string axis;
  while (std::getline(axes, axis, ';')) {
    const auto comma = axis.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("region axis '" + axis + "' must be 'lo,hi'");
    std::size_t used = 0;
    const double lo = std::stod(axis.substr(0, comma), &used);
    const double hi = std::stod(axis.substr(comma + 1));
    if (!(lo <= hi)) throw std::invalid_argument("region axis '" + axis + "' has lo > hi");
    r.bounds.emplace_back(lo, hi);
  }
  if (r.bounds.empty()) throw std::invalid_argument("empty region");
  return r;
}

Region Region::cube(std::size_t dim, double lo, double hi) {
  Region r;
  r.bounds.assign(dim, {lo, hi});
  return r;
}

Eigen::MatrixXd random_orthogonal(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  // splitmix64 finaliser over (seed, trial)
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return std::mt19937_64(mix(seed ^ mix(trial)));
}

Configuration random_placement(const Configuration& pattern, const Region& region,
                               std::mt19937_64& rng) {
  const std::size_t n = region.dim();
  if (pattern.dim() > n)
    throw std::invalid_argument("pattern dimension exceeds region dimension");
  const Eigen::MatrixXd q = random_orthogonal(static_cast<Eigen::Index>(n), rng);
  Eigen::VectorXd t(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::uniform_real_distribution<double> u(region.bounds[i].first, region.bounds[i].second);
    t(static_cast<Eigen::Index>(i)) = u(rng);
  }
  std::vector<Point> pts;
  pts.reserve(pattern.size());
  for (const auto& p : pattern.points()) pts.push_back(Point::from_vec(q * p.padded(n).vec() + t));
  return Configuration(std::move(pts), pattern.label(), /*allow_degenerate=*/true);
}

bool is_monochromatic(std::span<const ColorId> colors) {
  return std::all_of(colors.begin(), colors.end(),
                     [&](ColorId c) { return c == colors.front(); });
}

bool is_rainbow(std::span<const ColorId> colors) {
  std::unordered_set<ColorId> seen(colors.begin(), colors.end());
  return seen.size() == colors.size();
}

namespace {

ViolationReport sample(const ColoringRule& rule, const Configuration& pattern,
                       const Region& region, const SamplerOptions& opts,
                       PatternKind kind) {
  if (opts.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const auto predicate = kind == PatternKind::Monochromatic ? is_monochromatic : is_rainbow;
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, opts.trials));

  // Earliest violating trial wins, so the result is independent of scheduling.
  std::atomic<std::uint64_t> first_hit{opts.trials};
  auto worker = [&](unsigned w) {
    std::vector<ColorId> colors(pattern.size());
    for (std::uint64_t t = w; t < opts.trials && t < first_hit.load(); t += threads) {
      auto rng = trial_rng(opts.seed, t);
      const auto placed = random_placement(pattern, region, rng);
      for (std::size_t i = 0; i < placed.size(); ++i) colors[i] = rule.color(placed[i]);
      if (predicate(colors)) {
        std::uint64_t cur = first_hit.load();
        while (t < cur && !first_hit.compare_exchange_weak(cur, t)) {
        }
        return;
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }

  ViolationReport report{rule, kind, pattern, opts.trials, opts.seed, std::nullopt};
  const std::uint64_t hit = first_hit.load();
  if (hit < opts.trials) {
    auto rng = trial_rng(opts.seed, hit);
    Witness w{random_placement(pattern, region, rng), {}, hit};
    for (const auto& p : w.placed.points()) w.colors.push_back(rule.color(p));
    report.trials_run = hit + 1;
    report.witness = std::move(w);
  }
  return report;
}

}  // namespace

ViolationReport verify_no_mono(const ColoringRule& rule, const Configuration& x,
                               const Region& region, const SamplerOptions& opts) {
  return sample(rule, x, region, opts, PatternKind::Monochromatic);
}

ViolationReport verify_no_rainbow(const ColoringRule& rule, const Configuration& p,
                                  const Region& region, const SamplerOptions& opts) {
  return sample(rule, p, region, opts, PatternKind::Rainbow);
}

bool recheck(const ViolationReport& report, const Tolerance& tol) {
  if (!report.witness) return true;
  const auto& w = *report.witness;
  if (w.placed.size() != report.pattern.size() || w.colors.size() != w.placed.size()) return false;
  const Configuration pattern = report.pattern.padded(w.placed.dim());
  std::vector<std::size_t> identity(pattern.size());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
  if (!verify_match(w.placed, pattern, identity, tol)) return false;
  std::vector<ColorId> colors;
  for (const auto& p : w.placed.points()) colors.push_back(report.rule.color(p));
  if (colors != w.colors) return false;
  return report.kind == PatternKind::Monochromatic ? is_monochromatic(colors) : is_rainbow(colors);
}

}  // namespace egr
