#include "nenkf/particle_filter.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nenkf/errors.hpp"
#include "nenkf/log_weights.hpp"

namespace nenkf {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Normalises in place; throws ParticleCollapseError carrying time_index when
// every weight underflowed.
double finalize_weights(Eigen::VectorXd& log_w, int time_index) {
  const double lme = log_mean_exp(log_w);
  if (lme == kNegInf)
    throw ParticleCollapseError(
        time_index, "particle collapse at time " + std::to_string(time_index) +
                        ": all weights are zero");
  const double lse = lme + std::log(static_cast<double>(log_w.size()));
  log_w.array() -= lse;
  return lme;
}

}  // namespace

Eigen::VectorXd WeightedParticles::weights() const {
  return log_weights.array().exp();
}

PfOutput pf_init(const Model& model, const Eigen::VectorXd& theta, int n,
                 const Eigen::VectorXd& y0, RngStream step_rng) {
  if (n < 1) throw PreconditionError("pf_init: n must be >= 1");
  PfOutput out;
  out.particles.particles.resize(model.state_dim(), n);
  out.particles.log_weights.resize(n);
  out.particles.ancestors.resize(n);

  RngStream init_rng = step_rng.substream(phase::init);
  for (int j = 0; j < n; ++j) {
    out.particles.particles.col(j) = model.init_sample(theta, init_rng);
    out.particles.ancestors[j] = j;
    out.particles.log_weights(j) =
        model.obs_logpdf(theta, y0, out.particles.particles.col(j));
  }
  out.log_lik_increment = finalize_weights(out.particles.log_weights, 0);
  return out;
}

PfOutput pf_step(const Model& model, const Eigen::VectorXd& theta,
                 const WeightedParticles& prev, const Eigen::VectorXd& y,
                 int time_index, const Proposal* proposal, RngStream step_rng,
                 ResamplingScheme scheme) {
  const int n = prev.count();
  PfOutput out;
  out.particles.particles.resize(model.state_dim(), n);
  out.particles.log_weights.resize(n);

  RngStream resample_rng = step_rng.substream(phase::resample);
  out.particles.ancestors =
      resample(prev.weights(), n, scheme, resample_rng);

  RngStream prop_rng = step_rng.substream(phase::transition);
  for (int j = 0; j < n; ++j) {
    const Eigen::VectorXd x_prev =
        prev.particles.col(out.particles.ancestors[j]);
    Eigen::VectorXd x_new;
    double log_w;
    if (proposal == nullptr) {
      // Bootstrap: q = p, so the transition density cancels and the weight
      // is the observation density alone.
      x_new = model.transition_sample(theta, x_prev, prop_rng);
      log_w = model.obs_logpdf(theta, y, x_new);
    } else {
      x_new = proposal->sample(theta, x_prev, y, prop_rng);
      const auto lp = model.transition_logpdf(theta, x_new, x_prev);
      if (!lp)
        throw UnsupportedModelError(
            "pf_step: guided proposal requires a tractable transition "
            "density");
      log_w = *lp + model.obs_logpdf(theta, y, x_new) -
              proposal->logpdf(theta, x_new, x_prev, y);
    }
    if (!x_new.allFinite())
      throw TransitionFailureError(
          j, "pf_step: non-finite state for particle " + std::to_string(j) +
                 " at time " + std::to_string(time_index));
    out.particles.particles.col(j) = x_new;
    out.particles.log_weights(j) = log_w;
  }
  out.log_lik_increment = finalize_weights(out.particles.log_weights, time_index);
  return out;
}

PfRunResult pf_run(const Model& model, const Eigen::VectorXd& theta, int n,
                   const Eigen::MatrixXd& y, RngStream root,
                   const Proposal* proposal, ResamplingScheme scheme) {
  if (y.rows() < 1) throw PreconditionError("pf_run: no observations");
  PfRunResult res;
  res.increments.resize(y.rows());

  PfOutput step = pf_init(model, theta, n, y.row(0).transpose(),
                          root.substream(0));
  res.increments(0) = step.log_lik_increment;
  res.loglik = step.log_lik_increment;
  for (Eigen::Index t = 1; t < y.rows(); ++t) {
    step = pf_step(model, theta, step.particles, y.row(t).transpose(),
                   static_cast<int>(t), proposal, root.substream(t), scheme);
    res.increments(t) = step.log_lik_increment;
    res.loglik += step.log_lik_increment;
  }
  res.final_particles = std::move(step.particles);
  return res;
}

}  // namespace nenkf
