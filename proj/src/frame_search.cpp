// Width and projection-diameter computations. Both minimise a diameter over
// orthonormal frames; exact answers are only available in low dimension.

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "egr/geometry.hpp"

namespace egr {

namespace {

struct Vec2 {
  double x, y;
};

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain, counter-clockwise, collinear points dropped.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// Rotating calipers: the minimal width is attained perpendicular to a hull edge.
WidthResult planar_width(const Configuration& c) {
  std::vector<Vec2> pts;
  for (const auto& p : c.points()) pts.push_back({p[0], p[1]});
  const auto hull = convex_hull(pts);
  WidthResult best;
  best.exact = true;
  best.width = std::numeric_limits<double>::infinity();
  const std::size_t h = hull.size();
  std::size_t j = 1;
  for (std::size_t i = 0; i < h; ++i) {
    const Vec2& a = hull[i];
    const Vec2& b = hull[(i + 1) % h];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    while (cross(a, b, hull[(j + 1) % h]) > cross(a, b, hull[j % h])) j = (j + 1) % h;
    const double w = cross(a, b, hull[j % h]) / len;
    if (w < best.width) {
      best.width = w;
      best.direction = Eigen::Vector2d(-(b.y - a.y) / len, (b.x - a.x) / len);
    }
  }
  return best;
}

class FrameObjective {
 public:
  explicit FrameObjective(const Configuration& c) {
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j)
        diffs_.push_back(c[i].vec() - c[j].vec());
  }

  double operator()(const Eigen::MatrixXd& frame) const {
    double best = 0.0;
    for (const auto& d : diffs_) best = std::max(best, (frame.transpose() * d).squaredNorm());
    return std::sqrt(best);
  }

 private:
  std::vector<Eigen::VectorXd> diffs_;
};

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& m) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
  return q;
}

Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

// Random-perturbation pattern search on the Stiefel manifold.
double refine(const FrameObjective& f, Eigen::MatrixXd& frame, std::mt19937_64& rng) {
  double value = f(frame);
  double step = 0.25;
  int failures = 0;
  for (int iter = 0; iter < 20000 && step > 1e-11; ++iter) {
    Eigen::MatrixXd trial = orthonormalize(frame + step * gaussian(frame.rows(), frame.cols(), rng));
    const double v = f(trial);
    if (v < value) {
      value = v;
      frame = std::move(trial);
      failures = 0;
    } else if (++failures >= 12) {
      step *= 0.5;
      failures = 0;
    }
  }
  return value;
}

ProjectionResult search_frames(const Configuration& c, int k,
                               std::vector<Eigen::MatrixXd> starts,
                               const SearchOptions& opts) {
  const auto n = static_cast<Eigen::Index>(c.dim());
  std::mt19937_64 rng(opts.seed);
  const FrameObjective f(c);
  starts.push_back(Eigen::MatrixXd::Identity(n, k));
  for (int r = 0; r < opts.restarts; ++r) starts.push_back(orthonormalize(gaussian(n, k, rng)));

  // Rank the starts and refine the most promising ones plus the random ones.
  ProjectionResult best;
  best.bound = std::numeric_limits<double>::infinity();
  best.restarts = opts.restarts;
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < starts.size(); ++i) ranked.emplace_back(f(starts[i]), i);
  std::sort(ranked.begin(), ranked.end());
  const std::size_t budget = std::min<std::size_t>(ranked.size(),
                                                   static_cast<std::size_t>(std::max(opts.restarts, 1)) + 8);
  for (std::size_t r = 0; r < budget; ++r) {
    Eigen::MatrixXd frame = starts[ranked[r].second];
    const double v = refine(f, frame, rng);
    if (v < best.bound) {
      best.bound = v;
      best.frame = frame;
    }
  }
  return best;
}

// Normals of hyperplanes through `dim` of the points, capped in number.
std::vector<Eigen::MatrixXd> facet_normals(const Configuration& c, std::size_t cap) {
  std::vector<Eigen::MatrixXd> out;
  const std::size_t d = c.dim();
  if (c.size() < d) return out;
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = i;
  while (out.size() < cap) {
    Eigen::MatrixXd diffs(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d - 1));
    for (std::size_t j = 1; j < d; ++j)
      diffs.col(static_cast<Eigen::Index>(j - 1)) = c[idx[j]].vec() - c[idx[0]].vec();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs, Eigen::ComputeFullU);
    out.push_back(svd.matrixU().col(static_cast<Eigen::Index>(d - 1)));
    // next combination
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == c.size() - d + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace

WidthResult box_width(const Configuration& c, const SearchOptions& opts) {
  const auto n = static_cast<Eigen::Index>(c.dim());
  WidthResult res;
  if (c.size() == 1) {
    res.exact = true;
    res.direction = Eigen::VectorXd::Unit(n, 0);
    return res;
  }
  // Anything inside a hyperplane has width 0.
  const Eigen::MatrixXd m = c.matrix();
  const Eigen::MatrixXd centred = m.colwise() - m.rowwise().mean();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centred, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  const Tolerance tol;
  if (sv.size() < n || sv(n - 1) <= tol.abs_eps + tol.rel_eps * sv(0)) {
    res.exact = true;
    res.direction = svd.matrixU().col(n - 1);
    const Eigen::VectorXd proj = res.direction.transpose() * m;
    res.width = proj.maxCoeff() - proj.minCoeff();
    return res;
  }
  if (n == 1) {
    res.exact = true;
    res.direction = Eigen::VectorXd::Ones(1);
    res.width = m.maxCoeff() - m.minCoeff();
    return res;
  }
  if (n == 2) return planar_width(c);

  const auto found = search_frames(c, 1, facet_normals(c, 4096), opts);
  res.width = found.bound;
  res.direction = found.frame.col(0);
  res.exact = false;
  res.restarts = found.restarts;
  return res;
}

ProjectionResult projection_diameter(const Configuration& c, int subspace_dim,
                                     const SearchOptions& opts) {
  const auto n = static_cast<int>(c.dim());
  if (subspace_dim < 1 || subspace_dim > n)
    throw std::invalid_argument("subspace dimension must lie in [1, ambient dimension]");
  if (subspace_dim == n) {
    ProjectionResult res;
    res.bound = diameter(c);
    res.frame = Eigen::MatrixXd::Identity(n, n);
    res.exact = true;
    return res;
  }
  std::vector<Eigen::MatrixXd> starts;
  WidthResult width;
  if (subspace_dim == 1) {
    // A one-dimensional projection diameter is a directional width.
    width = box_width(c, opts);
    starts.push_back(width.direction);
  }
  auto res = search_frames(c, subspace_dim, std::move(starts), opts);
  if (subspace_dim == 1 && width.exact && width.width <= res.bound) {
    res.bound = width.width;
    res.frame = width.direction;
    res.exact = true;
  }
  return res;
}

}  // namespace egr
