#pragma once

// Finite point configurations in E^n and the scalar invariants used to
// state Euclidean Ramsey hypotheses: diameter, box-width, circumradius,
// affine dimension, sphericality and simplex heights.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace egr {

/// Length-matching rule shared by every floating-point comparison.
struct Tolerance {
  double abs_eps = 1e-9;
  double rel_eps = 1e-12;

  /// |a-b| <= abs_eps + rel_eps * max(|a|,|b|)
  bool match(double a, double b) const;
};

class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  Eigen::VectorXd vec() const;
  static Point from_vec(const Eigen::VectorXd& v);

  /// Copy with trailing zero coordinates appended up to `n`.
  Point padded(std::size_t n) const;
  double squared_norm() const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

double squared_distance(const Point& p, const Point& q);
double distance(const Point& p, const Point& q);

/// A non-empty, single-dimension list of points. Coincident points are
/// rejected unless `allow_degenerate` is set.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<Point> points, std::string label = {},
                         bool allow_degenerate = false,
                         const Tolerance& tol = {});

  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return points_.empty() ? 0 : points_.front().dim(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }
  const std::string& label() const { return label_; }
  bool degenerate() const { return degenerate_; }

  /// Points as columns of a dim x size matrix.
  Eigen::MatrixXd matrix() const;
  Configuration padded(std::size_t n) const;
  Configuration subset(std::span<const std::size_t> indices) const;

 private:
  std::vector<Point> points_;
  std::string label_;
  bool degenerate_ = false;
};

/// Sorted multiset of squared pairwise distances.
class DistanceProfile {
 public:
  explicit DistanceProfile(const Configuration& c);
  const std::vector<double>& values() const { return values_; }
  bool matches(const DistanceProfile& other, const Tolerance& tol) const;

 private:
  std::vector<double> values_;
};

double diameter(const Configuration& c);

struct WidthResult {
  double width = 0.0;
  Eigen::VectorXd direction;  // unit vector attaining `width`
  bool exact = false;         // false: `width` is an upper bound
  int restarts = 0;
};

struct SearchOptions {
  int restarts = 64;
  std::uint64_t seed = 0;
};

/// Minimal directional extent. Exact in dimension <= 2 and for configurations
/// that fit in a hyperplane; otherwise an upper bound from multi-start search.
WidthResult box_width(const Configuration& c, const SearchOptions& opts = {});

struct Ball {
  Eigen::VectorXd center;
  double radius = 0.0;
  std::vector<std::size_t> support;
};

/// Smallest enclosing ball (move-to-front Welzl).
Ball min_enclosing_ball(const Configuration& c);
double circumradius(const Configuration& c);

int affine_dimension(const Configuration& c, const Tolerance& tol = {});

struct Sphere {
  Point center;
  double radius = 0.0;
};

/// Sphere through every point, centered in the affine hull, if one exists.
std::optional<Sphere> is_spherical(const Configuration& c,
                                   const Tolerance& tol = {});

/// Distances of x_3..x_{k+2} to the affine span of their predecessors,
/// in input order.
std::vector<double> simplex_heights(const Configuration& c,
                                    const Tolerance& tol = {});

struct ProjectionResult {
  double bound = 0.0;     // diameter of the best projection found
  Eigen::MatrixXd frame;  // ambient_dim x subspace_dim, orthonormal columns
  bool exact = false;
  int restarts = 0;
};

/// Upper bound on the least diameter of an orthogonal projection of `c`
/// onto a `subspace_dim`-dimensional linear subspace.
ProjectionResult projection_diameter(const Configuration& c, int subspace_dim,
                                     const SearchOptions& opts = {});

/// A located copy of a needle configuration inside a haystack.
struct Match {
  std::vector<std::size_t> indices;      // sorted haystack indices
  std::vector<std::size_t> assignment;   // needle point j -> haystack index
  double max_deviation = 0.0;            // worst |d_needle - d_haystack|

  friend bool operator==(const Match& a, const Match& b) {
    return a.indices == b.indices;
  }
  friend auto operator<=>(const Match& a, const Match& b) {
    return a.indices <=> b.indices;
  }
};

/// All point sets of `haystack` congruent to `needle`, one Match per set,
/// ordered by sorted index tuple.
std::vector<Match> congruent_copies(const Configuration& haystack,
                                    const Configuration& needle,
                                    const Tolerance& tol = {});

/// True when `assignment` maps needle points onto haystack points with all
/// pairwise distances matching.
bool verify_match(const Configuration& haystack, const Configuration& needle,
                  std::span<const std::size_t> assignment,
                  const Tolerance& tol = {});

}  // namespace egr
