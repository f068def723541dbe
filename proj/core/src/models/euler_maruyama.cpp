#include "nenkf/models/euler_maruyama.hpp"

#include "nenkf/errors.hpp"
#include "nenkf/gaussian.hpp"

namespace nenkf {

Eigen::VectorXd euler_maruyama_step(const DriftFn& drift,
                                    const DiffusionFn& diffusion,
                                    const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& theta, double dt,
                                    RngStream& rng) {
  if (dt <= 0.0) throw PreconditionError("euler_maruyama_step: dt must be > 0");
  const Eigen::VectorXd mean = x + drift(x, theta) * dt;
  const Eigen::MatrixXd cov = diffusion(x, theta) * dt;
  return mvn_sample(mean, cov, rng);
}

Eigen::VectorXd substep_transition(
    const DriftFn& drift, const DiffusionFn& diffusion,
    const Eigen::VectorXd& x, const Eigen::VectorXd& theta, int m, double dt,
    RngStream& rng, const std::function<void(Eigen::VectorXd&)>& post_step) {
  if (m < 1) throw PreconditionError("substep_transition: m must be >= 1");
  Eigen::VectorXd state = x;
  for (int i = 0; i < m; ++i) {
    state = euler_maruyama_step(drift, diffusion, state, theta, dt, rng);
    if (post_step) post_step(state);
  }
  return state;
}

}  // namespace nenkf
