#include "nenkf/augmented_enkf.hpp"

#include "nenkf/enkf.hpp"
#include "nenkf/errors.hpp"
#include "nenkf/gaussian.hpp"
#include "nenkf/moments.hpp"

namespace nenkf {

namespace {

// Builds H_z = (H, 0_{d_y x d_theta}) around the model's H evaluated at the
// ensemble-mean parameter.
GaussianObs augmented_obs(const Model& model, const AugmentedEnsemble& ens) {
  const Eigen::VectorXd phi_mean = ens.log_params().rowwise().mean();
  const Eigen::VectorXd x_mean = ens.states().rowwise().mean();
  const GaussianObs base =
      model.obs_approx(phi_mean.array().exp().matrix(), x_mean);
  GaussianObs obs;
  obs.H = Eigen::MatrixXd::Zero(base.H.rows(), ens.z.rows());
  obs.H.leftCols(ens.d_x) = base.H;
  obs.R = base.R;
  return obs;
}

AugmentedEnsemble update_joint(const Model& model, Eigen::MatrixXd&& forecast,
                               int d_x, const Eigen::VectorXd& y,
                               RngStream& pseudo_rng) {
  AugmentedEnsemble fore{std::move(forecast), d_x};
  const GaussianObs obs = augmented_obs(model, fore);
  const EnkfStepOutput upd =
      enkf_update_forecast(fore.z, y, obs, obs, pseudo_rng);
  return {upd.ensemble, d_x};
}

}  // namespace

AugmentedEnsemble aenkf_init(const Model& model, int n,
                             const Eigen::VectorXd& y0, RngStream step_rng) {
  if (n < 2) throw PreconditionError("aenkf_init: n must be >= 2");
  const int d_x = model.state_dim();
  const int d_th = model.param_dim();
  Eigen::MatrixXd z(d_x + d_th, n);
  RngStream init_rng = step_rng.substream(phase::init);
  for (int j = 0; j < n; ++j) {
    const Eigen::VectorXd theta = model.prior_sample(init_rng);
    z.col(j).head(d_x) = model.init_sample(theta, init_rng);
    z.col(j).tail(d_th) = theta.array().log();
  }
  RngStream pseudo_rng = step_rng.substream(phase::pseudo_obs);
  return update_joint(model, std::move(z), d_x, y0, pseudo_rng);
}

AugmentedEnsemble aenkf_step(const Model& model, const AugmentedEnsemble& ens,
                             const Eigen::VectorXd& y, const LiuWestConfig& cfg,
                             RngStream step_rng) {
  const int d_x = ens.d_x;
  const int d_th = static_cast<int>(ens.z.rows()) - d_x;
  RngStream lw_rng = step_rng.substream(phase::liu_west);
  const Eigen::MatrixXd phi_new =
      liu_west_shrink(ens.log_params(), cfg, lw_rng);

  Eigen::MatrixXd forecast(ens.z.rows(), ens.z.cols());
  RngStream transition_rng = step_rng.substream(phase::transition);
  for (Eigen::Index j = 0; j < ens.z.cols(); ++j) {
    const Eigen::VectorXd theta = phi_new.col(j).array().exp();
    forecast.col(j).head(d_x) =
        model.transition_sample(theta, ens.z.col(j).head(d_x), transition_rng);
    forecast.col(j).tail(d_th) = phi_new.col(j);
  }
  RngStream pseudo_rng = step_rng.substream(phase::pseudo_obs);
  return update_joint(model, std::move(forecast), d_x, y, pseudo_rng);
}

AenkfRunResult aenkf_run(const Model& model, int n, const Eigen::MatrixXd& y,
                         const LiuWestConfig& cfg, RngStream root) {
  if (y.rows() < 1) throw PreconditionError("aenkf_run: no observations");
  AenkfRunResult res;
  res.log_param_means.resize(y.rows(), model.param_dim());

  AugmentedEnsemble ens =
      aenkf_init(model, n, y.row(0).transpose(), root.substream(0));
  res.log_param_means.row(0) = ens.log_params().rowwise().mean().transpose();
  for (Eigen::Index t = 1; t < y.rows(); ++t) {
    ens = aenkf_step(model, ens, y.row(t).transpose(), cfg, root.substream(t));
    res.log_param_means.row(t) = ens.log_params().rowwise().mean().transpose();
  }
  res.final_ensemble = std::move(ens);
  return res;
}

}  // namespace nenkf
