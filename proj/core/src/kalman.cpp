#include "nenkf/kalman.hpp"

#include "nenkf/errors.hpp"
#include "nenkf/gaussian.hpp"

namespace nenkf {

KalmanResult kalman_filter_exact(const LinearGaussianSpec& spec,
                                 const Eigen::MatrixXd& y) {
  const Eigen::Index d = spec.m0.size();
  const Eigen::Index dy = spec.H.rows();
  if (y.cols() != dy)
    throw PreconditionError("kalman_filter_exact: observation width mismatch");

  KalmanResult out;
  Eigen::VectorXd m = spec.m0;
  Eigen::MatrixXd P = spec.P0;
  for (Eigen::Index t = 0; t < y.rows(); ++t) {
    if (t > 0) {
      m = spec.F * m + spec.c;
      P = spec.F * P * spec.F.transpose() + spec.Q;
      P = 0.5 * (P + P.transpose()).eval();
    }
    const Eigen::VectorXd yt = y.row(t).transpose();
    const Eigen::VectorXd innov_mean = spec.H * m;
    Eigen::MatrixXd S = spec.H * P * spec.H.transpose() + spec.R;
    S = 0.5 * (S + S.transpose()).eval();
    const CholeskyFactor chol = cholesky_spd(S);
    const double inc = gaussian_logpdf(yt, innov_mean, chol);
    const Eigen::MatrixXd K =
        chol.solve((spec.H * P).eval()).transpose();  // P H' S^{-1}
    m += K * (yt - innov_mean);
    P = ((Eigen::MatrixXd::Identity(d, d) - K * spec.H) * P).eval();
    P = 0.5 * (P + P.transpose()).eval();

    out.loglik += inc;
    out.increments.push_back(inc);
    out.filter_means.push_back(m);
    out.filter_covs.push_back(P);
  }
  return out;
}

KalmanResult kalman_filter_exact(const Model& model,
                                 const Eigen::VectorXd& theta,
                                 const Eigen::MatrixXd& y) {
  auto spec = model.linear_gaussian(theta);
  if (!spec)
    throw UnsupportedModelError(
        "kalman_filter_exact: model has no exact linear-Gaussian form");
  return kalman_filter_exact(*spec, y);
}

}  // namespace nenkf
