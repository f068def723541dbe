#include "nenkf/model.hpp"

#include <cmath>

#include "nenkf/errors.hpp"
#include "nenkf/gamma_dist.hpp"

namespace nenkf {

double Model::prior_logpdf(const Eigen::VectorXd& theta) const {
  if (theta.size() != param_dim())
    throw PreconditionError("prior_logpdf: parameter dimension mismatch");
  double lp = 0.0;
  for (int i = 0; i < param_dim(); ++i) {
    if (theta(i) <= 0.0) return -std::numeric_limits<double>::infinity();
    lp += gamma_logpdf(theta(i), priors_[i].shape, priors_[i].rate);
  }
  return lp;
}

Eigen::VectorXd Model::prior_sample(RngStream& rng) const {
  Eigen::VectorXd theta(param_dim());
  for (int i = 0; i < param_dim(); ++i)
    theta(i) = gamma_sample(priors_[i].shape, priors_[i].rate, rng);
  return theta;
}

double Model::log_prior_logpdf(const Eigen::VectorXd& phi) const {
  if (!phi.allFinite()) return -std::numeric_limits<double>::infinity();
  // Density of phi = log(theta): pi(exp(phi)) * exp(sum phi).
  return prior_logpdf(phi.array().exp().matrix()) + phi.sum();
}

}  // namespace nenkf
