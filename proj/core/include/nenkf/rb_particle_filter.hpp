#ifndef NENKF_RB_PARTICLE_FILTER_HPP
#define NENKF_RB_PARTICLE_FILTER_HPP

#include <Eigen/Dense>

#include "nenkf/model.hpp"
#include "nenkf/param_filter.hpp"
#include "nenkf/particle_filter.hpp"

namespace nenkf {

// Configuration of the Gaussian observation approximation used when the
// observation density is nonlinear. The model's obs_approx supplies the
// target-matched (H, R); inflation c >= 1 scales R for the proposal/update
// only, never for the likelihood increment or the weight's g.
struct ObsApproxConfig {
  double inflation = 1.0;
};

// Factorised weight bookkeeping: total log weight of particle j is
// enkf_increment + corrections(j), with corrections(j) = log f - log g.
struct RbWeightParts {
  double enkf_increment = 0.0;
  Eigen::VectorXd corrections;
};

struct RbPfOutput {
  WeightedParticles particles;
  double log_lik_increment = 0.0;
  RbWeightParts parts;
};

// EnKF-as-proposal particle filter step: resample, propagate the resampled
// cloud through the transition, shift members with one EnKF update, and
// weight by the common EnKF increment times the per-particle f/g correction.
// The transition density is never evaluated. When the raw weights are all
// equal (f == g exactly) the resampling pass is skipped, which keeps the
// member-stream alignment with a plain EnKF run.
RbPfOutput rb_pf_init(const Model& model, const Eigen::VectorXd& theta, int n,
                      const Eigen::VectorXd& y0, const ObsApproxConfig& cfg,
                      RngStream step_rng);

RbPfOutput rb_pf_step(const Model& model, const Eigen::VectorXd& theta,
                      const WeightedParticles& prev, const Eigen::VectorXd& y,
                      int time_index, const ObsApproxConfig& cfg,
                      RngStream step_rng);

struct RbPfRunResult {
  double loglik = 0.0;
  Eigen::VectorXd increments;
  WeightedParticles final_particles;
};

RbPfRunResult rb_pf_run(const Model& model, const Eigen::VectorXd& theta,
                        int n, const Eigen::MatrixXd& y,
                        const ObsApproxConfig& cfg, RngStream root);

// Weight of the weighted-EnKF scheme: log p(x_new | x_prev) + log f(y | x_new)
// - log g^_enkf(x_new | ...), where the proposal density is the Gaussian
// posterior implied by the forecast cloud and the (inflated) observation
// approximation. Requires a tractable transition density.
double enkf_proposal_weight0(const Model& model, const Eigen::VectorXd& theta,
                             const Eigen::VectorXd& x_prev,
                             const Eigen::VectorXd& x_new,
                             const Eigen::MatrixXd& forecast_cloud,
                             const Eigen::VectorXd& y,
                             const ObsApproxConfig& cfg);

// Particle filter drawing proposals i.i.d. from the EnKF posterior Gaussian
// and weighting with enkf_proposal_weight0 (time 0 falls back to the
// bootstrap initialisation).
PfRunResult weighted_enkf_pf_run(const Model& model,
                                 const Eigen::VectorXd& theta, int n,
                                 const Eigen::MatrixXd& y,
                                 const ObsApproxConfig& cfg, RngStream root);

// Inner filter policy wiring rb_pf into the SMC^2 outer loop (RB-SMC^2).
struct RbInner {
  const Model* model;
  ObsApproxConfig obs;

  using State = WeightedParticles;
  static constexpr bool tolerate_weight_failure = true;

  std::pair<double, State> init(const Eigen::VectorXd& phi, int n,
                                const Eigen::VectorXd& y0,
                                RngStream rng) const {
    RbPfOutput out =
        rb_pf_init(*model, phi.array().exp(), n, y0, obs, std::move(rng));
    return {out.log_lik_increment, std::move(out.particles)};
  }

  double step(const Eigen::VectorXd& phi, State& s, const Eigen::VectorXd& y,
              int t, RngStream rng) const {
    RbPfOutput out =
        rb_pf_step(*model, phi.array().exp(), s, y, t, obs, std::move(rng));
    s = std::move(out.particles);
    return out.log_lik_increment;
  }

  std::pair<double, State> run_prefix(const Eigen::VectorXd& phi, int n,
                                      const Eigen::MatrixXd& y,
                                      RngStream root) const {
    RbPfRunResult res =
        rb_pf_run(*model, phi.array().exp(), n, y, obs, std::move(root));
    return {res.loglik, std::move(res.final_particles)};
  }
};

using Rbsmc2Filter = ParamFilter<RbInner>;

inline Rbsmc2Filter make_rbsmc2(const Model& model, Eigen::MatrixXd y,
                                const ObsApproxConfig& obs, OuterConfig cfg) {
  return Rbsmc2Filter(RbInner{&model, obs}, model, std::move(y),
                      std::move(cfg));
}

}  // namespace nenkf

#endif  // NENKF_RB_PARTICLE_FILTER_HPP
