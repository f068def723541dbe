#include "nenkf/models/ou.hpp"

#include <cmath>

#include "nenkf/errors.hpp"
#include "nenkf/gaussian.hpp"

namespace nenkf {

OuModel::OuModel(double x0, double obs_var, double dt)
    : Model({{2.0, 2.0}, {5.0, 3.0}, {2.0, 5.0}}),
      x0_(x0),
      obs_var_(obs_var),
      dt_(dt) {
  if (obs_var <= 0.0) throw PreconditionError("OuModel: obs_var must be > 0");
  if (dt <= 0.0) throw PreconditionError("OuModel: dt must be > 0");
}

double OuModel::transition_mean(const Eigen::VectorXd& theta, double x,
                                double dt) {
  const double decay = std::exp(-theta(0) * dt);
  return x * decay + theta(1) * (1.0 - decay);
}

double OuModel::transition_var(const Eigen::VectorXd& theta, double dt) {
  return theta(2) * theta(2) / (2.0 * theta(0)) *
         (1.0 - std::exp(-2.0 * theta(0) * dt));
}

Eigen::VectorXd OuModel::init_sample(const Eigen::VectorXd&,
                                     RngStream&) const {
  return Eigen::VectorXd::Constant(1, x0_);
}

Eigen::VectorXd OuModel::transition_sample(const Eigen::VectorXd& theta,
                                           const Eigen::VectorXd& x,
                                           RngStream& rng) const {
  const double mean = transition_mean(theta, x(0), dt_);
  const double sd = std::sqrt(transition_var(theta, dt_));
  return Eigen::VectorXd::Constant(1, mean + sd * rng.normal());
}

double OuModel::obs_logpdf(const Eigen::VectorXd&, const Eigen::VectorXd& y,
                           const Eigen::VectorXd& x) const {
  const double z = y(0) - x(0);
  return -0.5 * (std::log(2.0 * M_PI * obs_var_) + z * z / obs_var_);
}

Eigen::VectorXd OuModel::obs_sample(const Eigen::VectorXd&,
                                    const Eigen::VectorXd& x,
                                    RngStream& rng) const {
  return Eigen::VectorXd::Constant(1, x(0) + std::sqrt(obs_var_) * rng.normal());
}

GaussianObs OuModel::obs_approx(const Eigen::VectorXd&,
                                const Eigen::VectorXd&) const {
  GaussianObs obs;
  obs.H = Eigen::MatrixXd::Identity(1, 1);
  obs.R = Eigen::MatrixXd::Constant(1, 1, obs_var_);
  return obs;
}

std::optional<double> OuModel::transition_logpdf(
    const Eigen::VectorXd& theta, const Eigen::VectorXd& x_next,
    const Eigen::VectorXd& x_prev) const {
  const double mean = transition_mean(theta, x_prev(0), dt_);
  const double var = transition_var(theta, dt_);
  const double z = x_next(0) - mean;
  return -0.5 * (std::log(2.0 * M_PI * var) + z * z / var);
}

std::optional<LinearGaussianSpec> OuModel::linear_gaussian(
    const Eigen::VectorXd& theta) const {
  const double decay = std::exp(-theta(0) * dt_);
  LinearGaussianSpec spec;
  spec.F = Eigen::MatrixXd::Constant(1, 1, decay);
  spec.c = Eigen::VectorXd::Constant(1, theta(1) * (1.0 - decay));
  spec.Q = Eigen::MatrixXd::Constant(1, 1, transition_var(theta, dt_));
  spec.H = Eigen::MatrixXd::Identity(1, 1);
  spec.R = Eigen::MatrixXd::Constant(1, 1, obs_var_);
  spec.m0 = Eigen::VectorXd::Constant(1, x0_);
  spec.P0 = Eigen::MatrixXd::Zero(1, 1);
  return spec;
}

}  // namespace nenkf
