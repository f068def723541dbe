#include "nenkf/moments.hpp"

#include "nenkf/errors.hpp"

namespace nenkf {

EnsembleMoments ensemble_moments(const Eigen::MatrixXd& members) {
  const Eigen::Index n = members.cols();
  if (n < 2)
    throw PreconditionError("ensemble_moments: at least 2 members required");
  Eigen::VectorXd mean = members.rowwise().mean();
  Eigen::MatrixXd centered = members.colwise() - mean;
  Eigen::MatrixXd cov =
      centered * centered.transpose() / static_cast<double>(n - 1);
  cov = 0.5 * (cov + cov.transpose()).eval();
  return {std::move(mean), std::move(cov)};
}

EnsembleMoments weighted_moments(const Eigen::MatrixXd& members,
                                 const Eigen::VectorXd& weights) {
  if (members.cols() != weights.size())
    throw PreconditionError("weighted_moments: weight count mismatch");
  Eigen::VectorXd mean = members * weights;
  Eigen::MatrixXd centered = members.colwise() - mean;
  Eigen::MatrixXd cov =
      centered * weights.asDiagonal() * centered.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  return {std::move(mean), std::move(cov)};
}

}  // namespace nenkf
