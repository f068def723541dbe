#ifndef NENKF_KALMAN_HPP
#define NENKF_KALMAN_HPP

#include <Eigen/Dense>
#include <vector>

#include "nenkf/model.hpp"

namespace nenkf {

struct KalmanResult {
  double loglik = 0.0;
  std::vector<double> increments;            // log p(y_t | y_{0:t-1})
  std::vector<Eigen::VectorXd> filter_means;  // E[x_t | y_{0:t}]
  std::vector<Eigen::MatrixXd> filter_covs;
};

// Exact Kalman filter for a linear-Gaussian state-space model; the oracle
// behind particle-filter and EnKF consistency checks and the exact-likelihood
// reference MCMC. y has one observation per row.
KalmanResult kalman_filter_exact(const LinearGaussianSpec& spec,
                                 const Eigen::MatrixXd& y);

// Convenience overload: requires model.linear_gaussian(theta), otherwise
// throws UnsupportedModelError.
KalmanResult kalman_filter_exact(const Model& model,
                                 const Eigen::VectorXd& theta,
                                 const Eigen::MatrixXd& y);

}  // namespace nenkf

#endif  // NENKF_KALMAN_HPP
