#ifndef NENKF_MCMC_HPP
#define NENKF_MCMC_HPP

#include <Eigen/Dense>
#include <functional>

#include "nenkf/model.hpp"
#include "nenkf/move_kernel.hpp"
#include "nenkf/rng.hpp"

namespace nenkf {

struct NoState {};

using LoglikEvaluator =
    std::function<double(const Eigen::VectorXd& phi, RngStream rng)>;

struct McmcResult {
  Eigen::MatrixXd phis;  // one row per iteration (after the initial point)
  Eigen::VectorXd logliks;
  double accept_rate = 0.0;
};

// Random-walk (pseudo-marginal) Metropolis-Hastings on the log-parameter
// scale with a fixed proposal covariance. The carried log-likelihood is only
// refreshed on acceptance.
McmcResult mcmc_run(const LogDensityFn& log_prior,
                    const LoglikEvaluator& loglik, const Eigen::VectorXd& phi0,
                    const Eigen::MatrixXd& proposal_cov, int iterations,
                    RngStream root);

// MCMC with the EnKF likelihood estimate (ensemble MCMC); targets the
// EnKF-induced parameter posterior.
McmcResult emcmc_run(const Model& model, const Eigen::MatrixXd& y, int n,
                     const Eigen::VectorXd& phi0,
                     const Eigen::MatrixXd& proposal_cov, int iterations,
                     RngStream root);

// Particle-marginal MH with the particle-filter likelihood estimate; exactly
// targets the marginal parameter posterior.
McmcResult pmmh_run(const Model& model, const Eigen::MatrixXd& y, int n,
                    const Eigen::VectorXd& phi0,
                    const Eigen::MatrixXd& proposal_cov, int iterations,
                    RngStream root);

struct ChainSummary {
  Eigen::VectorXd mean;
  Eigen::VectorXd sd;
  Eigen::VectorXd mcse_mean;  // batch-means standard errors
  Eigen::VectorXd mcse_sd;
  int n_kept = 0;
};

// Moments of the post-burn-in chain with batch-means Monte Carlo standard
// errors (sqrt(n) batches).
ChainSummary summarize_chain(const Eigen::MatrixXd& phis, double burn_frac);

struct ReferenceResult {
  ChainSummary summary;
  McmcResult chain;
  Eigen::MatrixXd proposal_cov;  // covariance used by the main chain
};

// Pilot-tuned reference chain: a short pilot with an independent-component
// proposal estimates the posterior covariance, then the main chain runs with
// the scaled estimate. Used to produce gold-standard posterior moments.
ReferenceResult reference_chain(const LogDensityFn& log_prior,
                                const LoglikEvaluator& loglik,
                                const Eigen::VectorXd& phi0, int iterations,
                                RngStream root, double burn_frac = 0.1,
                                int pilot_iterations = 0);

}  // namespace nenkf

#endif  // NENKF_MCMC_HPP
