#ifndef NENKF_ENKF_HPP
#define NENKF_ENKF_HPP

#include <Eigen/Dense>

#include "nenkf/model.hpp"
#include "nenkf/rng.hpp"

namespace nenkf {

// K = Sigma_f H' (H Sigma_f H' + R)^{-1}, computed via a Cholesky solve of
// the innovation covariance (jitter ladder applies; no explicit inverse).
Eigen::MatrixXd kalman_gain(const Eigen::MatrixXd& sigma_f,
                            const GaussianObs& obs);

struct EnkfStepOutput {
  Eigen::MatrixXd ensemble;  // updated members, d_x x N
  Eigen::VectorXd forecast_mean;
  Eigen::MatrixXd forecast_cov;
  double log_lik_increment = 0.0;
};

// Stochastic update of a forecast ensemble: pseudo-observations
// y~_j ~ N(H x~_j, R_update) and member shift x_j = x~_j + K (y - y~_j).
// The likelihood increment is N(y; H mu^, H Sigma^ H' + R_increment);
// obs_update and obs_increment coincide for the plain EnKF but differ when a
// proposal-inflated R is in play. Pseudo-observation noise uses pseudo_rng,
// independent of the forecast draws.
EnkfStepOutput enkf_update_forecast(const Eigen::MatrixXd& forecast,
                                    const Eigen::VectorXd& y,
                                    const GaussianObs& obs_update,
                                    const GaussianObs& obs_increment,
                                    RngStream& pseudo_rng);

// Time 0: members from the initial distribution, then the update applied
// with the sample moments of that draw.
EnkfStepOutput enkf_init(const Model& model, const Eigen::VectorXd& theta,
                         int n, const Eigen::VectorXd& y0, RngStream step_rng);

// One forecast / update sweep; (H, R) comes from model.obs_approx at the
// forecast mean.
EnkfStepOutput enkf_step(const Model& model, const Eigen::VectorXd& theta,
                         const Eigen::MatrixXd& ensemble,
                         const Eigen::VectorXd& y, RngStream step_rng);

struct EnkfRunResult {
  double loglik = 0.0;
  Eigen::VectorXd increments;
  Eigen::MatrixXd final_ensemble;
};

EnkfRunResult enkf_run(const Model& model, const Eigen::VectorXd& theta,
                       int n, const Eigen::MatrixXd& y, RngStream root);

// Forecast helper shared with the EnKF-as-proposal particle filter: one
// transition draw per member, sequentially from transition_rng.
Eigen::MatrixXd propagate_members(const Model& model,
                                  const Eigen::VectorXd& theta,
                                  const Eigen::MatrixXd& members,
                                  RngStream& transition_rng);

}  // namespace nenkf

#endif  // NENKF_ENKF_HPP
