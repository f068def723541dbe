#ifndef NENKF_MODEL_HPP
#define NENKF_MODEL_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "nenkf/rng.hpp"

namespace nenkf {

// Linear-Gaussian observation structure y ~ N(Hx, R), either exact or a
// forecast-dependent approximation of a nonlinear observation density.
struct GaussianObs {
  Eigen::MatrixXd H;  // d_y x d_x
  Eigen::MatrixXd R;  // d_y x d_y, symmetric PSD
};

struct GammaPrior {
  double shape;
  double rate;
  double mean() const { return shape / rate; }
};

// Time-invariant linear-Gaussian state-space model
//   x_t = F x_{t-1} + c + N(0, Q),  y_t = H x_t + N(0, R),  x_0 ~ N(m0, P0).
struct LinearGaussianSpec {
  Eigen::MatrixXd F;
  Eigen::VectorXd c;
  Eigen::MatrixXd Q;
  Eigen::MatrixXd H;
  Eigen::MatrixXd R;
  Eigen::VectorXd m0;
  Eigen::MatrixXd P0;
};

// A state-space model: parameter prior, initial-state sampler, transition
// sampler over one inter-observation interval (internally using
// Euler-Maruyama substeps where applicable), and observation density.
//
// Parameters are natural-scale (strictly positive for all shipped models).
// The inference engine works on phi = log(theta); log_prior_logpdf includes
// the change-of-variables Jacobian.
class Model {
 public:
  virtual ~Model() = default;

  virtual int state_dim() const = 0;
  virtual int obs_dim() const = 0;
  int param_dim() const { return static_cast<int>(priors_.size()); }
  const std::vector<GammaPrior>& priors() const { return priors_; }

  virtual double prior_logpdf(const Eigen::VectorXd& theta) const;
  virtual Eigen::VectorXd prior_sample(RngStream& rng) const;
  double log_prior_logpdf(const Eigen::VectorXd& phi) const;

  // State at the time of the first observation.
  virtual Eigen::VectorXd init_sample(const Eigen::VectorXd& theta,
                                      RngStream& rng) const = 0;
  virtual Eigen::VectorXd transition_sample(const Eigen::VectorXd& theta,
                                            const Eigen::VectorXd& x,
                                            RngStream& rng) const = 0;
  virtual double obs_logpdf(const Eigen::VectorXd& theta,
                            const Eigen::VectorXd& y,
                            const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd obs_sample(const Eigen::VectorXd& theta,
                                     const Eigen::VectorXd& x,
                                     RngStream& rng) const = 0;

  // (H, R) for the filter update; forecast_mean feeds state-dependent
  // variance plug-ins (ignored by exactly-Gaussian models).
  virtual GaussianObs obs_approx(const Eigen::VectorXd& theta,
                                 const Eigen::VectorXd& forecast_mean) const = 0;

  // True when obs_logpdf coincides with the N(Hx, R) implied by obs_approx
  // for every forecast, i.e. f == g.
  virtual bool obs_exactly_gaussian() const { return false; }

  // Pointwise transition density, where tractable (OU only).
  virtual std::optional<double> transition_logpdf(
      const Eigen::VectorXd& theta, const Eigen::VectorXd& x_next,
      const Eigen::VectorXd& x_prev) const {
    (void)theta, (void)x_next, (void)x_prev;
    return std::nullopt;
  }

  // Exact linear-Gaussian representation, where one exists (OU only).
  virtual std::optional<LinearGaussianSpec> linear_gaussian(
      const Eigen::VectorXd& theta) const {
    (void)theta;
    return std::nullopt;
  }

 protected:
  explicit Model(std::vector<GammaPrior> priors) : priors_(std::move(priors)) {}

  std::vector<GammaPrior> priors_;
};

}  // namespace nenkf

#endif  // NENKF_MODEL_HPP
