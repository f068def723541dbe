#include "nenkf/models/sir_two_node.hpp"

#include <cmath>

#include "nenkf/errors.hpp"
#include "nenkf/gaussian.hpp"
#include "nenkf/models/euler_maruyama.hpp"

namespace nenkf {

SirTwoNodeModel::SirTwoNodeModel(Eigen::VectorXd x0, int substeps, double dt)
    : Model({{2.0, 2.0}, {2.0, 2.0}, {2.0, 2.0}, {2.0, 10.0}, {2.0, 2.0}}),
      x0_(std::move(x0)),
      substeps_(substeps),
      dt_(dt) {
  if (x0_.size() != 6) throw PreconditionError("SirTwoNodeModel: x0 must have 6 components");
  if (substeps < 1) throw PreconditionError("SirTwoNodeModel: substeps must be >= 1");
}

Eigen::VectorXd SirTwoNodeModel::default_x0() {
  Eigen::VectorXd x(6);
  x << 4631.0, 240.0, 37413.0, 1400.0, -10.0, -10.5;
  return x;
}

Eigen::MatrixXd SirTwoNodeModel::obs_matrix() {
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(2, 6);
  H(0, 0) = H(0, 1) = 1.0;
  H(1, 2) = H(1, 3) = 1.0;
  return H;
}

Eigen::VectorXd SirTwoNodeModel::drift(const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& theta) {
  const double gamma = theta(0), a12 = theta(1), a21 = theta(2);
  const double b1 = std::exp(x(4)), b2 = std::exp(x(5));
  const double h1 = b1 * (x(1) + a21 * x(3)) * x(0);  // node-1 infection hazard
  const double h2 = b2 * (x(3) + a12 * x(1)) * x(2);
  Eigen::VectorXd a = Eigen::VectorXd::Zero(6);
  a(0) = -h1;
  a(1) = h1 - gamma * x(1);
  a(2) = -h2;
  a(3) = h2 - gamma * x(3);
  return a;
}

Eigen::MatrixXd SirTwoNodeModel::diffusion(const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& theta) {
  const double gamma = theta(0), a12 = theta(1), a21 = theta(2);
  const double sb2 = theta(3) * theta(3);
  const double b1 = std::exp(x(4)), b2 = std::exp(x(5));
  const double h1 = b1 * (x(1) + a21 * x(3)) * x(0);
  const double h2 = b2 * (x(3) + a12 * x(1)) * x(2);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(6, 6);
  b(0, 0) = h1;
  b(0, 1) = b(1, 0) = -h1;
  b(1, 1) = h1 + gamma * x(1);
  b(2, 2) = h2;
  b(2, 3) = b(3, 2) = -h2;
  b(3, 3) = h2 + gamma * x(3);
  b(4, 4) = sb2;
  b(5, 5) = sb2;
  return b;
}

Eigen::VectorXd SirTwoNodeModel::transition_with(const Eigen::VectorXd& theta,
                                                 const Eigen::VectorXd& x,
                                                 int m, double dt,
                                                 RngStream& rng) const {
  return substep_transition(
      &SirTwoNodeModel::drift, &SirTwoNodeModel::diffusion, x, theta, m, dt,
      rng, [](Eigen::VectorXd& s) {
        // Compartments stay nonnegative; the log-rates are unconstrained.
        for (int i = 0; i < 4; ++i) s(i) = std::max(s(i), kStateFloor);
      });
}

Eigen::VectorXd SirTwoNodeModel::init_sample(const Eigen::VectorXd&,
                                             RngStream&) const {
  return x0_;
}

Eigen::VectorXd SirTwoNodeModel::transition_sample(const Eigen::VectorXd& theta,
                                                   const Eigen::VectorXd& x,
                                                   RngStream& rng) const {
  return transition_with(theta, x, substeps_, dt_, rng);
}

double SirTwoNodeModel::obs_logpdf(const Eigen::VectorXd& theta,
                                   const Eigen::VectorXd& y,
                                   const Eigen::VectorXd& x) const {
  const double s2 = theta(4) * theta(4);
  const Eigen::VectorXd hx = obs_matrix() * x;
  double lp = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double var = std::max(s2 * hx(i), kVarFloor);
    const double z = y(i) - hx(i);
    lp += -0.5 * (std::log(2.0 * M_PI * var) + z * z / var);
  }
  return lp;
}

Eigen::VectorXd SirTwoNodeModel::obs_sample(const Eigen::VectorXd& theta,
                                            const Eigen::VectorXd& x,
                                            RngStream& rng) const {
  const double s2 = theta(4) * theta(4);
  const Eigen::VectorXd hx = obs_matrix() * x;
  Eigen::VectorXd y(2);
  for (int i = 0; i < 2; ++i) {
    const double var = std::max(s2 * hx(i), kVarFloor);
    y(i) = hx(i) + std::sqrt(var) * rng.normal();
  }
  return y;
}

GaussianObs SirTwoNodeModel::obs_approx(
    const Eigen::VectorXd& theta, const Eigen::VectorXd& forecast_mean) const {
  const double s2 = theta(4) * theta(4);
  const Eigen::VectorXd hmu = obs_matrix() * forecast_mean;
  GaussianObs obs;
  obs.H = obs_matrix();
  obs.R = Eigen::MatrixXd::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    obs.R(i, i) = std::max(s2 * hmu(i), kVarFloor);
  return obs;
}

}  // namespace nenkf
