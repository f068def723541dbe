#ifndef NENKF_PROPOSAL_HPP
#define NENKF_PROPOSAL_HPP

#include <Eigen/Dense>

#include "nenkf/rng.hpp"

namespace nenkf {

// Random-walk proposal on the log-parameter scale with covariance
// zeta^2 * V; symmetric, so the q-ratio cancels in acceptance probabilities.
struct MhProposalConfig {
  double zeta = 0.0;  // 0 selects the default rule at first use
  bool leave_one_out = true;
  int iterations = 1;  // MH iterations per particle per sweep

  // zeta^2 = 2.56^2 / d_theta.
  static double default_zeta(int d_theta);
  double resolved_zeta(int d_theta) const {
    return zeta > 0.0 ? zeta : default_zeta(d_theta);
  }
};

// phi* = phi + zeta L z with L the (jittered) Cholesky factor of V.
Eigen::VectorXd rw_propose(const Eigen::VectorXd& phi, const Eigen::MatrixXd& V,
                           double zeta, RngStream& rng);

// min(0, prior_lr + loglik_lr + proposal_lr); -inf ratios propagate, NaN is
// rejected loudly.
double mh_log_accept(double prior_lr, double loglik_lr, double proposal_lr);

// Sample covariance of the cloud columns excluding column `skip`
// (pass -1 to keep all).
Eigen::MatrixXd cloud_covariance(const Eigen::MatrixXd& cloud, int skip);

}  // namespace nenkf

#endif  // NENKF_PROPOSAL_HPP
