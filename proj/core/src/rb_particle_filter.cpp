#include "nenkf/rb_particle_filter.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nenkf/enkf.hpp"
#include "nenkf/errors.hpp"
#include "nenkf/gaussian.hpp"
#include "nenkf/log_weights.hpp"
#include "nenkf/moments.hpp"

namespace nenkf {

namespace {

GaussianObs inflate(const GaussianObs& base, double c) {
  if (c < 1.0)
    throw PreconditionError("ObsApproxConfig: inflation must be >= 1");
  if (c == 1.0) return base;
  return {base.H, c * base.R};
}

// Shared tail of init/step: EnKF shift on the forecast, f/g corrections and
// the factorised weight. Corrections vanish identically when the model's
// observation density is exactly the Gaussian g.
RbPfOutput weigh_updated(const Model& model, const Eigen::VectorXd& theta,
                         Eigen::MatrixXd&& forecast, const Eigen::VectorXd& y,
                         const ObsApproxConfig& cfg, int time_index,
                         RngStream& pseudo_rng) {
  const int n = static_cast<int>(forecast.cols());
  const Eigen::VectorXd mean = forecast.rowwise().mean();
  const GaussianObs base = model.obs_approx(theta, mean);
  const GaussianObs proposal_obs = inflate(base, cfg.inflation);

  EnkfStepOutput upd =
      enkf_update_forecast(forecast, y, proposal_obs, base, pseudo_rng);

  RbPfOutput out;
  out.parts.enkf_increment = upd.log_lik_increment;
  out.parts.corrections.setZero(n);
  if (!model.obs_exactly_gaussian()) {
    const CholeskyFactor r_chol = cholesky_psd(base.R);
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXd xj = upd.ensemble.col(j);
      out.parts.corrections(j) =
          model.obs_logpdf(theta, y, xj) -
          gaussian_logpdf(y, base.H * xj, r_chol);
    }
  }

  const double corr_lme = log_mean_exp(out.parts.corrections);
  if (corr_lme == -std::numeric_limits<double>::infinity())
    throw ParticleCollapseError(
        time_index,
        "rb particle collapse at time " + std::to_string(time_index));
  out.log_lik_increment = out.parts.enkf_increment + corr_lme;

  out.particles.particles = std::move(upd.ensemble);
  const double corr_lse =
      corr_lme + std::log(static_cast<double>(n));
  out.particles.log_weights = out.parts.corrections.array() - corr_lse;
  return out;
}

bool all_equal(const Eigen::VectorXd& v) {
  return v.size() > 0 && v.maxCoeff() == v.minCoeff();
}

}  // namespace

RbPfOutput rb_pf_init(const Model& model, const Eigen::VectorXd& theta, int n,
                      const Eigen::VectorXd& y0, const ObsApproxConfig& cfg,
                      RngStream step_rng) {
  if (n < 2) throw PreconditionError("rb_pf_init: n must be >= 2");
  Eigen::MatrixXd members(model.state_dim(), n);
  RngStream init_rng = step_rng.substream(phase::init);
  for (int j = 0; j < n; ++j)
    members.col(j) = model.init_sample(theta, init_rng);

  RngStream pseudo_rng = step_rng.substream(phase::pseudo_obs);
  RbPfOutput out = weigh_updated(model, theta, std::move(members), y0, cfg, 0,
                                 pseudo_rng);
  out.particles.ancestors.resize(n);
  for (int j = 0; j < n; ++j) out.particles.ancestors[j] = j;
  return out;
}

RbPfOutput rb_pf_step(const Model& model, const Eigen::VectorXd& theta,
                      const WeightedParticles& prev, const Eigen::VectorXd& y,
                      int time_index, const ObsApproxConfig& cfg,
                      RngStream step_rng) {
  const int n = prev.count();
  if (n < 2) throw PreconditionError("rb_pf_step: n must be >= 2");

  // Equal weights make resampling a distribution-level no-op; skipping it
  // keeps the members aligned with a plain EnKF run when f == g.
  std::vector<int> ancestors(n);
  Eigen::MatrixXd resampled(prev.particles.rows(), n);
  if (all_equal(prev.log_weights)) {
    for (int j = 0; j < n; ++j) ancestors[j] = j;
    resampled = prev.particles;
  } else {
    RngStream resample_rng = step_rng.substream(phase::resample);
    ancestors = resample_multinomial(prev.weights(), n, resample_rng);
    for (int j = 0; j < n; ++j)
      resampled.col(j) = prev.particles.col(ancestors[j]);
  }

  RngStream transition_rng = step_rng.substream(phase::transition);
  Eigen::MatrixXd forecast =
      propagate_members(model, theta, resampled, transition_rng);

  RngStream pseudo_rng = step_rng.substream(phase::pseudo_obs);
  RbPfOutput out = weigh_updated(model, theta, std::move(forecast), y, cfg,
                                 time_index, pseudo_rng);
  out.particles.ancestors = std::move(ancestors);
  return out;
}

RbPfRunResult rb_pf_run(const Model& model, const Eigen::VectorXd& theta,
                        int n, const Eigen::MatrixXd& y,
                        const ObsApproxConfig& cfg, RngStream root) {
  if (y.rows() < 1) throw PreconditionError("rb_pf_run: no observations");
  RbPfRunResult res;
  res.increments.resize(y.rows());

  RbPfOutput step =
      rb_pf_init(model, theta, n, y.row(0).transpose(), cfg, root.substream(0));
  res.increments(0) = step.log_lik_increment;
  res.loglik = step.log_lik_increment;
  for (Eigen::Index t = 1; t < y.rows(); ++t) {
    step = rb_pf_step(model, theta, step.particles, y.row(t).transpose(),
                      static_cast<int>(t), cfg, root.substream(t));
    res.increments(t) = step.log_lik_increment;
    res.loglik += step.log_lik_increment;
  }
  res.final_particles = std::move(step.particles);
  return res;
}

double enkf_proposal_weight0(const Model& model, const Eigen::VectorXd& theta,
                             const Eigen::VectorXd& x_prev,
                             const Eigen::VectorXd& x_new,
                             const Eigen::MatrixXd& forecast_cloud,
                             const Eigen::VectorXd& y,
                             const ObsApproxConfig& cfg) {
  const auto lp = model.transition_logpdf(theta, x_new, x_prev);
  if (!lp)
    throw UnsupportedModelError(
        "enkf_proposal_weight0: model lacks a tractable transition density");

  const EnsembleMoments mom = ensemble_moments(forecast_cloud);
  const GaussianObs obs =
      inflate(model.obs_approx(theta, mom.mean), cfg.inflation);
  const Eigen::MatrixXd K = kalman_gain(mom.cov, obs);
  const Eigen::VectorXd post_mean =
      mom.mean + K * (y - obs.H * mom.mean);
  const Eigen::Index d = mom.mean.size();
  const Eigen::MatrixXd shift =
      Eigen::MatrixXd::Identity(d, d) - K * obs.H;
  Eigen::MatrixXd post_cov =
      shift * mom.cov * shift.transpose() + K * obs.R * K.transpose();
  post_cov = 0.5 * (post_cov + post_cov.transpose()).eval();

  return *lp + model.obs_logpdf(theta, y, x_new) -
         gaussian_logpdf(x_new, post_mean, cholesky_psd(post_cov));
}

PfRunResult weighted_enkf_pf_run(const Model& model,
                                 const Eigen::VectorXd& theta, int n,
                                 const Eigen::MatrixXd& y,
                                 const ObsApproxConfig& cfg, RngStream root) {
  if (y.rows() < 1)
    throw PreconditionError("weighted_enkf_pf_run: no observations");
  PfRunResult res;
  res.increments.resize(y.rows());

  PfOutput step =
      pf_init(model, theta, n, y.row(0).transpose(), root.substream(0));
  res.increments(0) = step.log_lik_increment;
  res.loglik = step.log_lik_increment;

  for (Eigen::Index t = 1; t < y.rows(); ++t) {
    RngStream step_rng = root.substream(t);
    const Eigen::VectorXd yt = y.row(t).transpose();
    const int count = step.particles.count();

    RngStream resample_rng = step_rng.substream(phase::resample);
    const std::vector<int> ancestors =
        resample_multinomial(step.particles.weights(), count, resample_rng);
    Eigen::MatrixXd parents(step.particles.particles.rows(), count);
    for (int j = 0; j < count; ++j)
      parents.col(j) = step.particles.particles.col(ancestors[j]);

    RngStream transition_rng = step_rng.substream(phase::transition);
    const Eigen::MatrixXd forecast =
        propagate_members(model, theta, parents, transition_rng);

    // Proposal: i.i.d. draws from the EnKF posterior Gaussian implied by the
    // forecast cloud, so the weight's denominator is the exact proposal
    // density.
    const EnsembleMoments mom = ensemble_moments(forecast);
    const GaussianObs obs =
        inflate(model.obs_approx(theta, mom.mean), cfg.inflation);
    const Eigen::MatrixXd K = kalman_gain(mom.cov, obs);
    const Eigen::VectorXd post_mean = mom.mean + K * (yt - obs.H * mom.mean);
    const Eigen::Index d = mom.mean.size();
    const Eigen::MatrixXd shift = Eigen::MatrixXd::Identity(d, d) - K * obs.H;
    Eigen::MatrixXd post_cov =
        shift * mom.cov * shift.transpose() + K * obs.R * K.transpose();
    post_cov = 0.5 * (post_cov + post_cov.transpose()).eval();
    const CholeskyFactor post_chol = cholesky_psd(post_cov);

    WeightedParticles next;
    next.particles.resize(d, count);
    next.log_weights.resize(count);
    next.ancestors = ancestors;
    RngStream draw_rng = step_rng.substream(phase::pseudo_obs);
    for (int j = 0; j < count; ++j) {
      const Eigen::VectorXd xj = mvn_sample(post_mean, post_chol, draw_rng);
      next.particles.col(j) = xj;
      const auto lp = model.transition_logpdf(theta, xj, parents.col(j));
      if (!lp)
        throw UnsupportedModelError(
            "weighted_enkf_pf_run: model lacks a tractable transition "
            "density");
      next.log_weights(j) = *lp + model.obs_logpdf(theta, yt, xj) -
                            gaussian_logpdf(xj, post_mean, post_chol);
    }
    const double lme = log_mean_exp(next.log_weights);
    if (lme == -std::numeric_limits<double>::infinity())
      throw ParticleCollapseError(static_cast<int>(t),
                                  "weighted-EnKF particle collapse");
    next.log_weights.array() -=
        lme + std::log(static_cast<double>(count));
    res.increments(t) = lme;
    res.loglik += lme;
    step.particles = std::move(next);
  }
  res.final_particles = std::move(step.particles);
  return res;
}

}  // namespace nenkf
