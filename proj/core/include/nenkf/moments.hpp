#ifndef NENKF_MOMENTS_HPP
#define NENKF_MOMENTS_HPP

#include <Eigen/Dense>

namespace nenkf {

// Members (or particles) are stored column-wise: a d x N matrix.
struct EnsembleMoments {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;  // 1/(N-1) divisor, exactly symmetric
};

// Requires N >= 2 columns.
EnsembleMoments ensemble_moments(const Eigen::MatrixXd& members);

// Weighted mean/covariance of column vectors; weights on the natural scale,
// assumed normalised. Covariance uses the plain weighted second moment.
EnsembleMoments weighted_moments(const Eigen::MatrixXd& members,
                                 const Eigen::VectorXd& weights);

}  // namespace nenkf

#endif  // NENKF_MOMENTS_HPP
