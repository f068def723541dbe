#include "nenkf/gaussian.hpp"

#include <cmath>

#include "nenkf/errors.hpp"

namespace nenkf {

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
}

double CholeskyFactor::log_det_cov() const {
  return 2.0 * lower.diagonal().array().log().sum();
}

Eigen::VectorXd CholeskyFactor::solve(const Eigen::VectorXd& b) const {
  Eigen::VectorXd x = lower.triangularView<Eigen::Lower>().solve(b);
  return lower.transpose().triangularView<Eigen::Upper>().solve(x);
}

Eigen::MatrixXd CholeskyFactor::solve(const Eigen::MatrixXd& b) const {
  Eigen::MatrixXd x = lower.triangularView<Eigen::Lower>().solve(b);
  return lower.transpose().triangularView<Eigen::Upper>().solve(x);
}

CholeskyFactor cholesky_spd(const Eigen::MatrixXd& sigma) {
  if (sigma.rows() != sigma.cols())
    throw PreconditionError("cholesky: matrix must be square");
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw SingularCovarianceError("covariance is not positive definite");
  return {llt.matrixL(), 0.0};
}

CholeskyFactor cholesky_psd(const Eigen::MatrixXd& sigma) {
  if (sigma.rows() != sigma.cols())
    throw PreconditionError("cholesky: matrix must be square");
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() == Eigen::Success) return {llt.matrixL(), 0.0};

  const double d = static_cast<double>(sigma.rows());
  const double trace = sigma.trace();
  const double base = trace > 0.0 ? 1e-8 * trace / d : 1e-8;
  double jitter = base;
  for (int attempt = 0; attempt < 3; ++attempt, jitter *= 10.0) {
    Eigen::MatrixXd shifted = sigma;
    shifted.diagonal().array() += jitter;
    llt.compute(shifted);
    if (llt.info() == Eigen::Success) return {llt.matrixL(), jitter};
  }
  throw SingularCovarianceError(
      "covariance remained singular after jitter escalation");
}

double gaussian_logpdf(const Eigen::VectorXd& y, const Eigen::VectorXd& mu,
                       const CholeskyFactor& chol) {
  if (y.size() != mu.size() || y.size() != chol.lower.rows())
    throw PreconditionError("gaussian_logpdf: dimension mismatch");
  Eigen::VectorXd z =
      chol.lower.triangularView<Eigen::Lower>().solve(y - mu);
  const double d = static_cast<double>(y.size());
  return -0.5 * (d * kLog2Pi + chol.log_det_cov() + z.squaredNorm());
}

double gaussian_logpdf(const Eigen::VectorXd& y, const Eigen::VectorXd& mu,
                       const Eigen::MatrixXd& sigma) {
  if (y.size() != mu.size() || sigma.rows() != y.size())
    throw PreconditionError("gaussian_logpdf: dimension mismatch");
  return gaussian_logpdf(y, mu, cholesky_spd(sigma));
}

Eigen::VectorXd mvn_sample(const Eigen::VectorXd& mu,
                           const CholeskyFactor& chol, RngStream& rng) {
  if (mu.size() != chol.lower.rows())
    throw PreconditionError("mvn_sample: dimension mismatch");
  return mu + chol.lower * rng.normal_vector(mu.size());
}

Eigen::VectorXd mvn_sample(const Eigen::VectorXd& mu,
                           const Eigen::MatrixXd& sigma, RngStream& rng) {
  if (mu.size() != sigma.rows() || sigma.rows() != sigma.cols())
    throw PreconditionError("mvn_sample: dimension mismatch");
  if (sigma.isZero(0.0)) return mu;
  return mvn_sample(mu, cholesky_psd(sigma), rng);
}

}  // namespace nenkf
