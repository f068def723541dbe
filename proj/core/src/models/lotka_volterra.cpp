#include "nenkf/models/lotka_volterra.hpp"

#include <algorithm>
#include <cmath>

#include "nenkf/errors.hpp"
#include "nenkf/models/euler_maruyama.hpp"

namespace nenkf {

LvModel::LvModel(double x1_0, double x2_0, int substeps, double dt)
    : Model({{2.0, 4.0}, {20.0, 1e4}, {2.0, 4.0}}),
      x1_0_(x1_0),
      x2_0_(x2_0),
      substeps_(substeps),
      dt_(dt) {
  if (substeps < 1) throw PreconditionError("LvModel: substeps must be >= 1");
}

Eigen::VectorXd LvModel::drift(const Eigen::VectorXd& x,
                               const Eigen::VectorXd& theta) {
  const double inter = theta(1) * x(0) * x(1);
  Eigen::VectorXd a(2);
  a(0) = theta(0) * x(0) - inter;
  a(1) = inter - theta(2) * x(1);
  return a;
}

Eigen::MatrixXd LvModel::diffusion(const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& theta) {
  const double inter = theta(1) * x(0) * x(1);
  Eigen::MatrixXd b(2, 2);
  b(0, 0) = theta(0) * x(0) + inter;
  b(0, 1) = -inter;
  b(1, 0) = -inter;
  b(1, 1) = inter + theta(2) * x(1);
  return b;
}

Eigen::VectorXd LvModel::initial_condition() const {
  Eigen::VectorXd x(2);
  x << x1_0_, x2_0_;
  return x;
}

Eigen::VectorXd LvModel::transition_with(const Eigen::VectorXd& theta,
                                         const Eigen::VectorXd& x, int m,
                                         double dt, RngStream& rng) const {
  return substep_transition(
      &LvModel::drift, &LvModel::diffusion, x, theta, m, dt, rng,
      [](Eigen::VectorXd& s) {
        s = s.cwiseMax(kStateFloor);
      });
}

Eigen::VectorXd LvModel::init_sample(const Eigen::VectorXd& theta,
                                     RngStream& rng) const {
  // First observation arrives one interval after the fixed starting point.
  return transition_with(theta, initial_condition(), substeps_, dt_, rng);
}

Eigen::VectorXd LvModel::transition_sample(const Eigen::VectorXd& theta,
                                           const Eigen::VectorXd& x,
                                           RngStream& rng) const {
  return transition_with(theta, x, substeps_, dt_, rng);
}

double LvModel::obs_logpdf(const Eigen::VectorXd&, const Eigen::VectorXd& y,
                           const Eigen::VectorXd& x) const {
  const double var = std::max(x(0), kVarFloor);
  const double z = y(0) - x(0);
  return -0.5 * (std::log(2.0 * M_PI * var) + z * z / var);
}

Eigen::VectorXd LvModel::obs_sample(const Eigen::VectorXd&,
                                    const Eigen::VectorXd& x,
                                    RngStream& rng) const {
  const double var = std::max(x(0), kVarFloor);
  return Eigen::VectorXd::Constant(1, x(0) + std::sqrt(var) * rng.normal());
}

GaussianObs LvModel::obs_approx(const Eigen::VectorXd&,
                                const Eigen::VectorXd& forecast_mean) const {
  GaussianObs obs;
  obs.H = Eigen::MatrixXd::Zero(1, 2);
  obs.H(0, 0) = 1.0;
  obs.R = Eigen::MatrixXd::Constant(1, 1,
                                    std::max(forecast_mean(0), kVarFloor));
  return obs;
}

}  // namespace nenkf
