#include <cmath>
#include <list>

#include "egr/geometry.hpp"

namespace egr {

namespace {

// Move-to-front variant of Welzl's algorithm over points already expressed
// in coordinates of their affine hull, so the support never exceeds dim+1.
class MiniBall {
 public:
  explicit MiniBall(const Eigen::MatrixXd& pts)
      : pts_(pts), dim_(pts.rows()) {
    double scale = 0.0;
    for (Eigen::Index j = 0; j < pts.cols(); ++j)
      scale = std::max(scale, pts.col(j).cwiseAbs().maxCoeff());
    slack_ = 1e-12 * std::max(1.0, scale);
    for (Eigen::Index j = 0; j < pts.cols(); ++j) order_.push_back(j);
    center_ = Eigen::VectorXd::Zero(dim_);
    radius_sq_ = -1.0;
    solve(order_.end());
  }

  const Eigen::VectorXd& center() const { return center_; }
  double radius() const { return radius_sq_ <= 0.0 ? 0.0 : std::sqrt(radius_sq_); }

 private:
  using Iter = std::list<Eigen::Index>::iterator;

  void solve(Iter end) {
    fit_support();
    if (static_cast<Eigen::Index>(support_.size()) == dim_ + 1) return;
    for (Iter it = order_.begin(); it != end;) {
      Iter next = std::next(it);
      const double d2 = (pts_.col(*it) - center_).squaredNorm();
      if (radius_sq_ < 0.0 || std::sqrt(d2) > std::sqrt(std::max(radius_sq_, 0.0)) + slack_) {
        support_.push_back(*it);
        solve(it);
        support_.pop_back();
        order_.splice(order_.begin(), order_, it);
      }
      it = next;
    }
  }

  // Smallest ball with every support point on its boundary.
  void fit_support() {
    if (support_.empty()) {
      radius_sq_ = -1.0;
      return;
    }
    const Eigen::VectorXd p0 = pts_.col(support_.front());
    const auto m = static_cast<Eigen::Index>(support_.size()) - 1;
    if (m == 0) {
      center_ = p0;
      radius_sq_ = 0.0;
      return;
    }
    Eigen::MatrixXd a(dim_, m);
    for (Eigen::Index j = 0; j < m; ++j)
      a.col(j) = pts_.col(support_[static_cast<std::size_t>(j) + 1]) - p0;
    const Eigen::MatrixXd gram = a.transpose() * a;
    const Eigen::VectorXd rhs = gram.diagonal();
    const Eigen::VectorXd lambda =
        (2.0 * gram).completeOrthogonalDecomposition().solve(rhs);
    center_ = p0 + a * lambda;
    radius_sq_ = (center_ - p0).squaredNorm();
  }

  const Eigen::MatrixXd& pts_;
  Eigen::Index dim_;
  double slack_ = 0.0;
  std::list<Eigen::Index> order_;
  std::vector<Eigen::Index> support_;
  Eigen::VectorXd center_;
  double radius_sq_ = -1.0;
};

}  // namespace

Ball min_enclosing_ball(const Configuration& c) {
  const Eigen::MatrixXd m = c.matrix();
  const Eigen::VectorXd origin = m.rowwise().mean();
  const Eigen::MatrixXd centred = m.colwise() - origin;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centred, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-12 * std::max(1.0, sv(0))) ++rank;

  Ball ball;
  if (rank == 0) {
    ball.center = m.col(0);
    ball.radius = 0.0;
    ball.support.push_back(0);
    return ball;
  }
  const Eigen::MatrixXd basis = svd.matrixU().leftCols(rank);
  const Eigen::MatrixXd local = basis.transpose() * centred;
  MiniBall mb(local);
  ball.center = origin + basis * mb.center();
  ball.radius = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j)
    ball.radius = std::max(ball.radius, (m.col(static_cast<Eigen::Index>(j)) - ball.center).norm());
  const double on_sphere = 1e-9 * std::max(1.0, ball.radius);
  for (std::size_t j = 0; j < c.size(); ++j)
    if (ball.radius - (m.col(static_cast<Eigen::Index>(j)) - ball.center).norm() <= on_sphere)
      ball.support.push_back(j);
  return ball;
}

double circumradius(const Configuration& c) { return min_enclosing_ball(c).radius; }

}  // namespace egr
