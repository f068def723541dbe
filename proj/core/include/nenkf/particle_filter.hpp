#ifndef NENKF_PARTICLE_FILTER_HPP
#define NENKF_PARTICLE_FILTER_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "nenkf/model.hpp"
#include "nenkf/resampling.hpp"
#include "nenkf/rng.hpp"

namespace nenkf {

// State particle cloud; particles are columns. log_weights are kept
// normalised (natural-scale weights sum to one). ancestors holds the most
// recent resampling indices.
struct WeightedParticles {
  Eigen::MatrixXd particles;
  Eigen::VectorXd log_weights;
  std::vector<int> ancestors;

  int count() const { return static_cast<int>(particles.cols()); }
  Eigen::VectorXd weights() const;  // natural scale
};

// Guided proposal q_t(x_t | x_{t-1}, y_t); a null proposal means bootstrap,
// in which case the weight reduces to the observation density and no
// transition density is ever evaluated.
struct Proposal {
  std::function<Eigen::VectorXd(const Eigen::VectorXd& theta,
                                const Eigen::VectorXd& x_prev,
                                const Eigen::VectorXd& y, RngStream& rng)>
      sample;
  std::function<double(const Eigen::VectorXd& theta,
                       const Eigen::VectorXd& x_new,
                       const Eigen::VectorXd& x_prev, const Eigen::VectorXd& y)>
      logpdf;
};

struct PfOutput {
  WeightedParticles particles;
  double log_lik_increment = 0.0;
};

// Time 0: draw from the initial distribution and weight by f(y_0 | x).
PfOutput pf_init(const Model& model, const Eigen::VectorXd& theta, int n,
                 const Eigen::VectorXd& y0, RngStream step_rng);

// One resample / propagate / weight sweep. time_index is used for error
// reporting and must match the observation's position. proposal == nullptr
// selects the bootstrap filter.
PfOutput pf_step(const Model& model, const Eigen::VectorXd& theta,
                 const WeightedParticles& prev, const Eigen::VectorXd& y,
                 int time_index, const Proposal* proposal, RngStream step_rng,
                 ResamplingScheme scheme = ResamplingScheme::multinomial);

struct PfRunResult {
  double loglik = 0.0;
  Eigen::VectorXd increments;
  WeightedParticles final_particles;
};

// Full filter over y (rows are observations y_0..y_T). exp(loglik) is an
// unbiased estimator of the observed-data likelihood.
PfRunResult pf_run(const Model& model, const Eigen::VectorXd& theta, int n,
                   const Eigen::MatrixXd& y, RngStream root,
                   const Proposal* proposal = nullptr,
                   ResamplingScheme scheme = ResamplingScheme::multinomial);

}  // namespace nenkf

#endif  // NENKF_PARTICLE_FILTER_HPP
