#ifndef NENKF_MODELS_EULER_MARUYAMA_HPP
#define NENKF_MODELS_EULER_MARUYAMA_HPP

#include <Eigen/Dense>
#include <functional>

#include "nenkf/rng.hpp"

namespace nenkf {

using DriftFn = std::function<Eigen::VectorXd(const Eigen::VectorXd& x,
                                              const Eigen::VectorXd& theta)>;
using DiffusionFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd& x,
                                                  const Eigen::VectorXd& theta)>;

// x' ~ N(x + a(x, theta) dt, b(x, theta) dt).
Eigen::VectorXd euler_maruyama_step(const DriftFn& drift,
                                    const DiffusionFn& diffusion,
                                    const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& theta, double dt,
                                    RngStream& rng);

// m chained Euler-Maruyama steps of size dt spanning one inter-observation
// interval; post_step (optional) clamps the state after each substep.
Eigen::VectorXd substep_transition(
    const DriftFn& drift, const DiffusionFn& diffusion,
    const Eigen::VectorXd& x, const Eigen::VectorXd& theta, int m, double dt,
    RngStream& rng,
    const std::function<void(Eigen::VectorXd&)>& post_step = nullptr);

}  // namespace nenkf

#endif  // NENKF_MODELS_EULER_MARUYAMA_HPP
