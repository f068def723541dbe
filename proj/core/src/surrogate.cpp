#include "nenkf/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "nenkf/errors.hpp"

namespace nenkf {

SurrogateStore::SurrogateStore(const Eigen::MatrixXd& points,
                               const Eigen::VectorXd& values) {
  if (points.cols() != values.size())
    throw PreconditionError("SurrogateStore: value count mismatch");
  if (points.cols() < 1)
    throw PreconditionError("SurrogateStore: empty store");

  // Deduplicate exact repeats (resampled copies share bit patterns) via a
  // lexicographic sort of the columns.
  std::vector<int> order(points.cols());
  std::iota(order.begin(), order.end(), 0);
  const auto col_less = [&](int a, int b) {
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      if (points(i, a) != points(i, b)) return points(i, a) < points(i, b);
    }
    return false;
  };
  std::sort(order.begin(), order.end(), col_less);
  std::vector<int> keep;
  keep.reserve(order.size());
  for (std::size_t j = 0; j < order.size(); ++j) {
    if (j == 0 || points.col(order[j]) != points.col(order[j - 1]))
      keep.push_back(order[j]);
  }

  Eigen::MatrixXd unique(points.rows(), keep.size());
  values_.resize(keep.size());
  for (std::size_t j = 0; j < keep.size(); ++j) {
    unique.col(j) = points.col(keep[j]);
    values_(j) = values(keep[j]);
  }

  scale_.resize(points.rows());
  const Eigen::VectorXd mean = unique.rowwise().mean();
  for (Eigen::Index i = 0; i < unique.rows(); ++i) {
    const double var =
        unique.cols() > 1
            ? (unique.row(i).array() - mean(i)).square().sum() /
                  static_cast<double>(unique.cols() - 1)
            : 0.0;
    scale_(i) = var > 0.0 ? std::sqrt(var) : 1.0;
  }
  points_ = scale_.cwiseInverse().asDiagonal() * unique;
}

double SurrogateStore::knn_loglik(const Eigen::VectorXd& phi, int k) const {
  if (k < 1) throw PreconditionError("knn_loglik: k must be >= 1");
  if (phi.size() != points_.rows())
    throw PreconditionError("knn_loglik: dimension mismatch");

  const Eigen::VectorXd q = phi.cwiseQuotient(scale_);
  Eigen::VectorXd dist(points_.cols());
  for (Eigen::Index j = 0; j < points_.cols(); ++j)
    dist(j) = (points_.col(j) - q).norm();

  const int k_eff = std::min<int>(k, static_cast<int>(points_.cols()));
  std::vector<int> order(points_.cols());
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(
      order.begin(), order.begin() + k_eff, order.end(),
      [&](int a, int b) { return dist(a) != dist(b) ? dist(a) < dist(b) : a < b; });

  // Zero distance would blow up the inverse-distance weights; the stored
  // value is the right answer there anyway.
  if (dist(order[0]) == 0.0) return values_(order[0]);

  double wsum = 0.0, vsum = 0.0;
  for (int j = 0; j < k_eff; ++j) {
    const double w = 1.0 / dist(order[j]);
    wsum += w;
    vsum += w * values_(order[j]);
  }
  return vsum / wsum;
}

}  // namespace nenkf
