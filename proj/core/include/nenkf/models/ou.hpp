#ifndef NENKF_MODELS_OU_HPP
#define NENKF_MODELS_OU_HPP

#include "nenkf/model.hpp"

namespace nenkf {

// Mean-reverting Ornstein-Uhlenbeck diffusion
//   dX = theta_1 (theta_2 - X) dt + theta_3 dW
// observed at unit spacing through y ~ N(x, r). The SDE solves exactly, so
// the transition density, its moments and the full linear-Gaussian form are
// all available: this is the oracle model of the test suite.
class OuModel : public Model {
 public:
  explicit OuModel(double x0 = 10.0, double obs_var = 0.1, double dt = 1.0);

  int state_dim() const override { return 1; }
  int obs_dim() const override { return 1; }

  Eigen::VectorXd init_sample(const Eigen::VectorXd& theta,
                              RngStream& rng) const override;
  Eigen::VectorXd transition_sample(const Eigen::VectorXd& theta,
                                    const Eigen::VectorXd& x,
                                    RngStream& rng) const override;
  double obs_logpdf(const Eigen::VectorXd& theta, const Eigen::VectorXd& y,
                    const Eigen::VectorXd& x) const override;
  Eigen::VectorXd obs_sample(const Eigen::VectorXd& theta,
                             const Eigen::VectorXd& x,
                             RngStream& rng) const override;
  GaussianObs obs_approx(const Eigen::VectorXd& theta,
                         const Eigen::VectorXd& forecast_mean) const override;
  bool obs_exactly_gaussian() const override { return true; }

  std::optional<double> transition_logpdf(
      const Eigen::VectorXd& theta, const Eigen::VectorXd& x_next,
      const Eigen::VectorXd& x_prev) const override;
  std::optional<LinearGaussianSpec> linear_gaussian(
      const Eigen::VectorXd& theta) const override;

  // Closed-form conditional moments over an interval of length dt.
  static double transition_mean(const Eigen::VectorXd& theta, double x,
                                double dt);
  static double transition_var(const Eigen::VectorXd& theta, double dt);

  double x0() const { return x0_; }
  double obs_var() const { return obs_var_; }
  double dt() const { return dt_; }

 private:
  double x0_;
  double obs_var_;
  double dt_;
};

}  // namespace nenkf

#endif  // NENKF_MODELS_OU_HPP
