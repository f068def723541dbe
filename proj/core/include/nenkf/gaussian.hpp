#ifndef NENKF_GAUSSIAN_HPP
#define NENKF_GAUSSIAN_HPP

#include <Eigen/Dense>

#include "nenkf/rng.hpp"

namespace nenkf {

// Lower Cholesky factor of a covariance, possibly obtained after adding
// diagonal jitter (jitter records the amount added, 0 if none).
struct CholeskyFactor {
  Eigen::MatrixXd lower;
  double jitter = 0.0;

  double log_det_cov() const;  // log |L L'|
  // Solve (L L') x = b.
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  Eigen::MatrixXd solve(const Eigen::MatrixXd& b) const;
};

// Strict factorisation: throws SingularCovarianceError if sigma is not
// numerically positive definite. No jitter is applied.
CholeskyFactor cholesky_spd(const Eigen::MatrixXd& sigma);

// Factorisation with the jitter escalation ladder for (near-)rank-deficient
// covariances such as ensemble estimates with N <= d: on failure retry with
// eps * trace(sigma)/d added to the diagonal, eps = 1e-8, escalating by a
// factor of 10 at most 3 times before throwing. A zero-trace matrix uses an
// absolute ladder starting at 1e-8.
CholeskyFactor cholesky_psd(const Eigen::MatrixXd& sigma);

// log N(y; mu, sigma) via Cholesky; all bookkeeping stays in log space.
// Throws SingularCovarianceError for non-PD sigma.
double gaussian_logpdf(const Eigen::VectorXd& y, const Eigen::VectorXd& mu,
                       const Eigen::MatrixXd& sigma);
double gaussian_logpdf(const Eigen::VectorXd& y, const Eigen::VectorXd& mu,
                       const CholeskyFactor& chol);

// Draw from N(mu, sigma). sigma may be merely PSD (jitter ladder applies);
// an exactly-zero sigma returns mu.
Eigen::VectorXd mvn_sample(const Eigen::VectorXd& mu,
                           const Eigen::MatrixXd& sigma, RngStream& rng);
Eigen::VectorXd mvn_sample(const Eigen::VectorXd& mu,
                           const CholeskyFactor& chol, RngStream& rng);

}  // namespace nenkf

#endif  // NENKF_GAUSSIAN_HPP
