#include "nenkf/enkf.hpp"

#include <string>

#include "nenkf/errors.hpp"
#include "nenkf/gaussian.hpp"
#include "nenkf/moments.hpp"

namespace nenkf {

Eigen::MatrixXd kalman_gain(const Eigen::MatrixXd& sigma_f,
                            const GaussianObs& obs) {
  Eigen::MatrixXd S = obs.H * sigma_f * obs.H.transpose() + obs.R;
  S = 0.5 * (S + S.transpose()).eval();
  const CholeskyFactor chol = cholesky_psd(S);
  // K' = S^{-1} (H Sigma_f)
  return chol.solve((obs.H * sigma_f).eval()).transpose();
}

Eigen::MatrixXd propagate_members(const Model& model,
                                  const Eigen::VectorXd& theta,
                                  const Eigen::MatrixXd& members,
                                  RngStream& transition_rng) {
  Eigen::MatrixXd forecast(members.rows(), members.cols());
  for (Eigen::Index j = 0; j < members.cols(); ++j) {
    forecast.col(j) =
        model.transition_sample(theta, members.col(j), transition_rng);
    if (!forecast.col(j).allFinite())
      throw TransitionFailureError(
          static_cast<int>(j),
          "transition sampler produced a non-finite state for member " +
              std::to_string(j));
  }
  return forecast;
}

EnkfStepOutput enkf_update_forecast(const Eigen::MatrixXd& forecast,
                                    const Eigen::VectorXd& y,
                                    const GaussianObs& obs_update,
                                    const GaussianObs& obs_increment,
                                    RngStream& pseudo_rng) {
  const Eigen::Index n = forecast.cols();
  if (n < 2)
    throw PreconditionError("enkf update: at least 2 members required");

  EnkfStepOutput out;
  const EnsembleMoments mom = ensemble_moments(forecast);
  out.forecast_mean = mom.mean;
  out.forecast_cov = mom.cov;

  const Eigen::MatrixXd K = kalman_gain(mom.cov, obs_update);
  const CholeskyFactor r_chol = cholesky_psd(obs_update.R);
  out.ensemble.resize(forecast.rows(), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::VectorXd y_pseudo =
        obs_update.H * forecast.col(j) +
        r_chol.lower * pseudo_rng.normal_vector(y.size());
    out.ensemble.col(j) = forecast.col(j) + K * (y - y_pseudo);
  }

  Eigen::MatrixXd S_inc = obs_increment.H * mom.cov *
                              obs_increment.H.transpose() +
                          obs_increment.R;
  S_inc = 0.5 * (S_inc + S_inc.transpose()).eval();
  out.log_lik_increment =
      gaussian_logpdf(y, obs_increment.H * mom.mean, cholesky_psd(S_inc));
  return out;
}

EnkfStepOutput enkf_init(const Model& model, const Eigen::VectorXd& theta,
                         int n, const Eigen::VectorXd& y0,
                         RngStream step_rng) {
  if (n < 2) throw PreconditionError("enkf_init: n must be >= 2");
  Eigen::MatrixXd members(model.state_dim(), n);
  RngStream init_rng = step_rng.substream(phase::init);
  for (int j = 0; j < n; ++j)
    members.col(j) = model.init_sample(theta, init_rng);

  const Eigen::VectorXd mean = members.rowwise().mean();
  const GaussianObs obs = model.obs_approx(theta, mean);
  RngStream pseudo_rng = step_rng.substream(phase::pseudo_obs);
  return enkf_update_forecast(members, y0, obs, obs, pseudo_rng);
}

EnkfStepOutput enkf_step(const Model& model, const Eigen::VectorXd& theta,
                         const Eigen::MatrixXd& ensemble,
                         const Eigen::VectorXd& y, RngStream step_rng) {
  if (ensemble.cols() < 2)
    throw PreconditionError("enkf_step: n must be >= 2");
  RngStream transition_rng = step_rng.substream(phase::transition);
  const Eigen::MatrixXd forecast =
      propagate_members(model, theta, ensemble, transition_rng);

  const Eigen::VectorXd mean = forecast.rowwise().mean();
  const GaussianObs obs = model.obs_approx(theta, mean);
  RngStream pseudo_rng = step_rng.substream(phase::pseudo_obs);
  return enkf_update_forecast(forecast, y, obs, obs, pseudo_rng);
}

EnkfRunResult enkf_run(const Model& model, const Eigen::VectorXd& theta,
                       int n, const Eigen::MatrixXd& y, RngStream root) {
  if (y.rows() < 1) throw PreconditionError("enkf_run: no observations");
  EnkfRunResult res;
  res.increments.resize(y.rows());

  EnkfStepOutput step =
      enkf_init(model, theta, n, y.row(0).transpose(), root.substream(0));
  res.increments(0) = step.log_lik_increment;
  res.loglik = step.log_lik_increment;
  for (Eigen::Index t = 1; t < y.rows(); ++t) {
    step = enkf_step(model, theta, step.ensemble, y.row(t).transpose(),
                     root.substream(t));
    res.increments(t) = step.log_lik_increment;
    res.loglik += step.log_lik_increment;
  }
  res.final_ensemble = std::move(step.ensemble);
  return res;
}

}  // namespace nenkf
