#include "nenkf/models/lorenz96.hpp"

#include <cmath>

#include "nenkf/errors.hpp"

namespace nenkf {

Lorenz96Model::Lorenz96Model(int dim, double obs_var, int substeps, double dt)
    : Model({{4.0, 4.0}, {4.0, 4.0}, {6.0, 2.0}, {16.0, 2.0}}),
      dim_(dim),
      obs_var_(obs_var),
      substeps_(substeps),
      dt_(dt) {
  if (dim < 4) throw PreconditionError("Lorenz96Model: dim must be >= 4");
  if (substeps < 1)
    throw PreconditionError("Lorenz96Model: substeps must be >= 1");
}

Eigen::VectorXd Lorenz96Model::drift(const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& theta) {
  const Eigen::Index d = x.size();
  Eigen::VectorXd a(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const Eigen::Index ip1 = (i + 1) % d;
    const Eigen::Index im1 = (i - 1 + d) % d;
    const Eigen::Index im2 = (i - 2 + d) % d;
    a(i) = theta(0) * (x(ip1) - x(im2)) * x(im1) - theta(1) * x(i) + theta(2);
  }
  return a;
}

Eigen::VectorXd Lorenz96Model::transition_with(const Eigen::VectorXd& theta,
                                               const Eigen::VectorXd& x, int m,
                                               double dt,
                                               RngStream& rng) const {
  // Diagonal diffusion th4^2 I, so the noise is drawn componentwise.
  const double noise_sd = theta(3) * std::sqrt(dt);
  Eigen::VectorXd state = x;
  for (int i = 0; i < m; ++i) {
    state += drift(state, theta) * dt + noise_sd * rng.normal_vector(dim_);
  }
  return state;
}

Eigen::VectorXd Lorenz96Model::init_sample(const Eigen::VectorXd& theta,
                                           RngStream& rng) const {
  // First observation is one inter-observation interval after x_0 = 0.
  return transition_with(theta, initial_condition(), substeps_, dt_, rng);
}

Eigen::VectorXd Lorenz96Model::transition_sample(const Eigen::VectorXd& theta,
                                                 const Eigen::VectorXd& x,
                                                 RngStream& rng) const {
  return transition_with(theta, x, substeps_, dt_, rng);
}

double Lorenz96Model::obs_logpdf(const Eigen::VectorXd&,
                                 const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& x) const {
  const double d = static_cast<double>(dim_);
  return -0.5 * (d * std::log(2.0 * M_PI * obs_var_) +
                 (y - x).squaredNorm() / obs_var_);
}

Eigen::VectorXd Lorenz96Model::obs_sample(const Eigen::VectorXd&,
                                          const Eigen::VectorXd& x,
                                          RngStream& rng) const {
  return x + std::sqrt(obs_var_) * rng.normal_vector(dim_);
}

GaussianObs Lorenz96Model::obs_approx(const Eigen::VectorXd&,
                                      const Eigen::VectorXd&) const {
  GaussianObs obs;
  obs.H = Eigen::MatrixXd::Identity(dim_, dim_);
  obs.R = obs_var_ * Eigen::MatrixXd::Identity(dim_, dim_);
  return obs;
}

}  // namespace nenkf
