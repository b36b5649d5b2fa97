#include "egr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace egr {

bool Tolerance::match(double a, double b) const {
  return std::abs(a - b) <=
         abs_eps + rel_eps * std::max(std::abs(a), std::abs(b));
}

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("point must have dimension >= 1");
  for (double x : coords_)
    if (!std::isfinite(x)) throw std::invalid_argument("point coordinate is not finite");
}

Point::Point(std::initializer_list<double> coords)
    : Point(std::vector<double>(coords)) {}

Eigen::VectorXd Point::vec() const {
  return Eigen::Map<const Eigen::VectorXd>(coords_.data(),
                                           static_cast<Eigen::Index>(coords_.size()));
}

Point Point::from_vec(const Eigen::VectorXd& v) {
  return Point(std::vector<double>(v.data(), v.data() + v.size()));
}

Point Point::padded(std::size_t n) const {
  if (n < dim()) throw std::invalid_argument("cannot pad a point to a smaller dimension");
  std::vector<double> c = coords_;
  c.resize(n, 0.0);
  return Point(std::move(c));
}

double Point::squared_norm() const {
  double s = 0.0;
  for (double x : coords_) s += x * x;
  return s;
}

double squared_distance(const Point& p, const Point& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const double d = p[i] - q[i];
    s += d * d;
  }
  return s;
}

double distance(const Point& p, const Point& q) {
  return std::sqrt(squared_distance(p, q));
}

Configuration::Configuration(std::vector<Point> points, std::string label,
                             bool allow_degenerate, const Tolerance& tol)
    : points_(std::move(points)), label_(std::move(label)),
      degenerate_(allow_degenerate) {
  if (points_.empty()) throw std::invalid_argument("configuration must be non-empty");
  const std::size_t n = points_.front().dim();
  for (const auto& p : points_)
    if (p.dim() != n) throw std::invalid_argument("configuration points differ in dimension");
  if (allow_degenerate) return;
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j)
      if (tol.match(distance(points_[i], points_[j]), 0.0))
        throw std::invalid_argument("coincident points " + std::to_string(i) +
                                    " and " + std::to_string(j));
}

Eigen::MatrixXd Configuration::matrix() const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(dim()),
                    static_cast<Eigen::Index>(size()));
  for (std::size_t j = 0; j < size(); ++j) m.col(static_cast<Eigen::Index>(j)) = points_[j].vec();
  return m;
}

Configuration Configuration::padded(std::size_t n) const {
  std::vector<Point> pts;
  pts.reserve(size());
  for (const auto& p : points_) pts.push_back(p.padded(n));
  Configuration c;
  c.points_ = std::move(pts);
  c.label_ = label_;
  c.degenerate_ = degenerate_;
  return c;
}

Configuration Configuration::subset(std::span<const std::size_t> indices) const {
  if (indices.empty()) throw std::invalid_argument("empty subset");
  Configuration c;
  for (auto i : indices) c.points_.push_back(points_.at(i));
  c.label_ = label_;
  c.degenerate_ = degenerate_;
  return c;
}

DistanceProfile::DistanceProfile(const Configuration& c) {
  values_.reserve(c.size() * (c.size() - 1) / 2);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      values_.push_back(squared_distance(c[i], c[j]));
  std::sort(values_.begin(), values_.end());
}

bool DistanceProfile::matches(const DistanceProfile& other,
                              const Tolerance& tol) const {
  if (values_.size() != other.values_.size()) return false;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!tol.match(std::sqrt(values_[i]), std::sqrt(other.values_[i]))) return false;
  return true;
}

double diameter(const Configuration& c) {
  double best = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      best = std::max(best, squared_distance(c[i], c[j]));
  return std::sqrt(best);
}

namespace {

// Orthonormal basis (columns) of the span of the centred points, together
// with the centroid.
struct AffineHull {
  Eigen::VectorXd origin;
  Eigen::MatrixXd basis;
};

AffineHull affine_hull(const Configuration& c, const Tolerance& tol) {
  const Eigen::MatrixXd m = c.matrix();
  AffineHull h;
  h.origin = m.rowwise().mean();
  const Eigen::MatrixXd centred = m.colwise() - h.origin;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centred, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol.abs_eps + tol.rel_eps * top) ++rank;
  h.basis = svd.matrixU().leftCols(rank);
  return h;
}

}  // namespace

int affine_dimension(const Configuration& c, const Tolerance& tol) {
  return static_cast<int>(affine_hull(c, tol).basis.cols());
}

std::optional<Sphere> is_spherical(const Configuration& c, const Tolerance& tol) {
  if (c.size() < 2) throw std::invalid_argument("is_spherical needs at least 2 points");
  const AffineHull hull = affine_hull(c, tol);
  const Eigen::Index k = hull.basis.cols();
  if (k == 0) return std::nullopt;
  // Centre = p0 + B*y with 2 (p_j - p0)^T B y = |p_j - p0|^2 for all j.
  const Eigen::VectorXd p0 = c[0].vec();
  Eigen::MatrixXd a(static_cast<Eigen::Index>(c.size() - 1), k);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(c.size() - 1));
  for (std::size_t j = 1; j < c.size(); ++j) {
    const Eigen::VectorXd v = c[j].vec() - p0;
    a.row(static_cast<Eigen::Index>(j - 1)) = 2.0 * (hull.basis.transpose() * v).transpose();
    rhs(static_cast<Eigen::Index>(j - 1)) = v.squaredNorm();
  }
  const Eigen::VectorXd y = a.completeOrthogonalDecomposition().solve(rhs);
  const Eigen::VectorXd center = p0 + hull.basis * y;
  const double radius = (center - p0).norm();
  for (std::size_t j = 0; j < c.size(); ++j)
    if (!tol.match((c[j].vec() - center).norm(), radius)) return std::nullopt;
  return Sphere{Point::from_vec(center), radius};
}

std::vector<double> simplex_heights(const Configuration& c, const Tolerance& tol) {
  if (c.size() < 3) throw std::invalid_argument("simplex_heights needs at least 3 points");
  const Eigen::VectorXd x1 = c[0].vec();
  std::vector<Eigen::VectorXd> basis;
  auto residual = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd r = v;
    // Two passes of modified Gram-Schmidt for stability.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) r -= b.dot(r) * b;
    return r;
  };
  auto absorb = [&](const Eigen::VectorXd& r) {
    const double n = r.norm();
    if (n > tol.abs_eps) basis.push_back(r / n);
  };
  absorb(residual(c[1].vec() - x1));
  std::vector<double> heights;
  for (std::size_t i = 2; i < c.size(); ++i) {
    const Eigen::VectorXd r = residual(c[i].vec() - x1);
    const double h = r.norm();
    heights.push_back(h > tol.abs_eps ? h : 0.0);
    absorb(r);
  }
  return heights;
}

bool verify_match(const Configuration& haystack, const Configuration& needle,
                  std::span<const std::size_t> assignment, const Tolerance& tol) {
  if (assignment.size() != needle.size()) return false;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] >= haystack.size()) return false;
    for (std::size_t j = i + 1; j < assignment.size(); ++j) {
      if (assignment[i] == assignment[j]) return false;
      if (!tol.match(distance(haystack[assignment[i]], haystack[assignment[j]]),
                     distance(needle[i], needle[j])))
        return false;
    }
  }
  return true;
}

}  // namespace egr
