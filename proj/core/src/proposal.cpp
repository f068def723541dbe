#include "nenkf/proposal.hpp"

#include <cmath>

#include "nenkf/errors.hpp"
#include "nenkf/gaussian.hpp"

namespace nenkf {

double MhProposalConfig::default_zeta(int d_theta) {
  if (d_theta < 1)
    throw PreconditionError("default_zeta: d_theta must be >= 1");
  return 2.56 / std::sqrt(static_cast<double>(d_theta));
}

Eigen::VectorXd rw_propose(const Eigen::VectorXd& phi, const Eigen::MatrixXd& V,
                           double zeta, RngStream& rng) {
  if (V.rows() != phi.size() || V.cols() != phi.size())
    throw PreconditionError("rw_propose: covariance dimension mismatch");
  if (zeta == 0.0) return phi;
  const CholeskyFactor chol = cholesky_psd(V);
  return phi + zeta * (chol.lower * rng.normal_vector(phi.size()));
}

double mh_log_accept(double prior_lr, double loglik_lr, double proposal_lr) {
  if (std::isnan(prior_lr) || std::isnan(loglik_lr) || std::isnan(proposal_lr))
    throw PreconditionError("mh_log_accept: NaN log ratio");
  const double s = prior_lr + loglik_lr + proposal_lr;
  if (std::isnan(s)) return -std::numeric_limits<double>::infinity();
  return std::min(0.0, s);
}

Eigen::MatrixXd cloud_covariance(const Eigen::MatrixXd& cloud, int skip) {
  const Eigen::Index m = cloud.cols();
  const Eigen::Index n = skip >= 0 ? m - 1 : m;
  if (n < 2)
    throw PreconditionError("cloud_covariance: need at least 2 particles");
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(cloud.rows());
  for (Eigen::Index j = 0; j < m; ++j)
    if (j != skip) sum += cloud.col(j);
  const Eigen::VectorXd mean = sum / static_cast<double>(n);
  Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(cloud.rows(), cloud.rows());
  for (Eigen::Index j = 0; j < m; ++j) {
    if (j == skip) continue;
    const Eigen::VectorXd d = cloud.col(j) - mean;
    scatter.noalias() += d * d.transpose();
  }
  Eigen::MatrixXd cov = scatter / static_cast<double>(n - 1);
  return 0.5 * (cov + cov.transpose()).eval();
}

}  // namespace nenkf
